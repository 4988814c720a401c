import os
import random
import unittest
from unittest import mock

from carlitzlab.cogalois import (
    GroupAction,
    SubextSpec,
    annihilator_of_subgroup,
    b1_h1,
    bound_check,
    cocycle_kernel,
    cocycles_vanishing_on,
    cog_element_order,
    cog_exactness_check,
    cog_order,
    cog_order_trivial_action,
    cyclic_cog_exponent,
    galois_iff_roots_check,
    group_structure,
    h1_closed_form,
    hereditary_check,
    inflation_restriction_check,
    intermediate_of_c_p2,
    is_elementary_abelian_quotient,
    is_radical,
    is_radical_cyclotomic,
    mu_of_fixed_field,
    non_p_part_check,
    not_radical_via_c_p2,
    purity_check,
    purity_tower_check,
    quotient_action,
    radical_subgroup_set,
    subext_report,
    z1_group,
)
from carlitzlab.carlitz import TorsionElem
from carlitzlab.config import ENV_CAPS, load_caps
from carlitzlab.cycfield import CycField, fixed_by, subgroup_lattice
from carlitzlab.errors import HypothesisNotMet, NotInL, NotNested
from carlitzlab.gf import field_for_q
from carlitzlab.groups import FiniteGroup
from carlitzlab.polyring import Poly, poly_gcd, poly_xgcd, residues, unit_residues


def _ring(q):
    spec = field_for_q(q)
    return spec, Poly.t(spec)


def _unit_order(A, M):
    x, n = A % M, 1
    while not x.is_one():
        x = (x * A) % M
        n += 1
    return n


def _is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _c4_instance():
    """q = 2, M = T^3 (T+1)^3, Gal(L'/K) = C_4 and mu(L') = mu(K)."""
    spec, T = _ring(2)
    P3, Q3 = T**3, (T + 1) ** 3
    M = P3 * Q3
    _, s1, s2 = poly_xgcd(P3, Q3)
    A = ((T + 1) * s2 * Q3 + T * s1 * P3) % M
    E = CycField(M)
    return SubextSpec(E, E.full_group, E.subgroup([A]))


class TestFixedFieldTorsion(unittest.TestCase):
    def test_mu(self):
        _, T = _ring(3)
        E = CycField(T**5)
        self.assertEqual(mu_of_fixed_field(E, E.subgroup([T**2 + 1])), T**2)
        self.assertEqual(mu_of_fixed_field(E, E.subgroup([T + 1])), T)
        self.assertEqual(mu_of_fixed_field(E, E.trivial_subgroup()), T**5)

    def test_purity(self):
        _, T = _ring(3)
        E = CycField(T**2)
        self.assertTrue(purity_check(SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup())))
        F = CycField(T)
        self.assertFalse(purity_check(SubextSpec(F, F.full_group, F.trivial_subgroup())))

    def test_purity_tower(self):
        _, T = _ring(3)
        E = CycField(T**3)
        whole, top, bottom = purity_tower_check(
            E, E.full_group, E.subgroup([T + 1, T**2 + 1]), E.subgroup([T**2 + 1])
        )
        self.assertEqual(whole, top and bottom)

    def test_not_nested(self):
        _, T = _ring(3)
        E = CycField(T**2)
        with self.assertRaises(NotNested):
            SubextSpec(E, E.trivial_subgroup(), E.full_group)


class TestCocycles(unittest.TestCase):
    def test_between_cyclotomic(self):
        _, T = _ring(3)
        action = GroupAction.cyclic(3, T**2, T + 1)
        self.assertEqual(z1_group(action).order, 9)
        self.assertEqual(b1_h1(action), (3, 3))

    def test_kernels_and_annihilators(self):
        _, T = _ring(3)
        z1 = z1_group(GroupAction.cyclic(3, T**2, T + 1))
        group = z1.action.group
        everything = frozenset(range(len(group)))
        e = group.identity_idx
        for h in z1.cocycles():
            kernel = cocycle_kernel(h)
            self.assertIn(e, kernel)
            self.assertIn(kernel, (frozenset([e]), everything))
        self.assertEqual(annihilator_of_subgroup(z1, []), everything)
        self.assertEqual(annihilator_of_subgroup(z1, z1.tables), frozenset([e]))
        self.assertEqual(len(cocycles_vanishing_on(z1, [e])), 9)
        self.assertEqual(cocycles_vanishing_on(z1, everything), [tuple([0] * 3)])

    def test_random_cyclic_actions(self):
        rng = random.Random(2024)
        spec, T = _ring(3)
        moduli = [T**2, T**3, T * (T + 1), T**2 * (T + 1), T**4, (T**2 + 1) * T]
        for _ in range(60):
            M = rng.choice(moduli)
            A = rng.choice(unit_residues(M))
            n = _unit_order(A, M)
            with self.subTest(M=str(M), A=str(A)):
                action = GroupAction.cyclic(n, M, A)
                norm = Poly.zero(spec)
                power = Poly.one(spec)
                for _ in range(n):
                    norm = norm + power
                    power = (power * A) % M
                kernel = sum(1 for B in residues(spec, M.degree) if not (norm * B) % M)
                self.assertEqual(z1_group(action).order, kernel)
                b1, h1 = b1_h1(action)
                self.assertEqual(b1, spec.q ** (M.degree - poly_gcd(A - 1, M).degree))
                if n == spec.p:
                    self.assertEqual(h1, h1_closed_form(M, A, spec.p))

    def test_closed_form_values(self):
        _, T = _ring(3)
        self.assertEqual(h1_closed_form(T**2, T + 1, 3), 3)
        self.assertEqual(h1_closed_form(T**3, T + 1, 3), 1)
        self.assertEqual(h1_closed_form(T**3, T**2 + 1, 3), 9)
        self.assertEqual(h1_closed_form(T**5, T**2 + 1, 3), 3)

    def test_inflation_restriction(self):
        _, T = _ring(3)
        M = T**3
        group = FiniteGroup.from_operation(unit_residues(M), lambda a, b: (a * b) % M, name="H_T^3")
        action = GroupAction.from_lifts(group, M)
        lattice = group.subgroup_lattice()
        self.assertGreaterEqual(len(lattice), 5)
        for sub in lattice:
            with self.subTest(order=len(sub)):
                self.assertTrue(inflation_restriction_check(action, sub))


class TestCogaloisOrders(unittest.TestCase):
    def test_between_cyclotomic(self):
        spec, T = _ring(3)
        E = CycField(T**2)
        s = SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup())
        self.assertEqual(cog_order(s), 9)
        self.assertEqual(cyclic_cog_exponent(s), 2)
        self.assertEqual(bound_check(s), (9, 9, True))
        self.assertTrue(is_elementary_abelian_quotient(s))

    def test_bound_not_attained(self):
        _, T = _ring(3)
        E = CycField(T**5)
        s = SubextSpec(E, E.subgroup([T**2 + 1]), E.trivial_subgroup())
        self.assertEqual(cog_order(s), 81)
        self.assertEqual(3 ** cyclic_cog_exponent(s), 81)
        self.assertEqual(b1_h1(quotient_action(s)), (27, 3))
        self.assertEqual(bound_check(s), (81, 243, True))

    def test_trivial_action(self):
        _, T = _ring(3)
        self.assertEqual(cog_order_trivial_action([3], T), 3)
        self.assertEqual(cog_order_trivial_action([2], T), 1)
        self.assertEqual(cog_order_trivial_action([3, 9], T**2), 81)

    def test_element_orders(self):
        _, T = _ring(3)
        E = CycField(T**3)
        s = SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup())
        self.assertEqual(cog_element_order(s, TorsionElem.generator(T**3)), T**2)
        P, Q = T, T + 1
        F = CycField(P**2 * Q**2)
        s2 = SubextSpec(F, F.subgroup([P * Q + 1]), F.trivial_subgroup())
        self.assertEqual(cog_element_order(s2, TorsionElem.generator(P**2)), P)
        self.assertEqual(cog_element_order(s2, TorsionElem.generator(Q**2)), Q)

    def test_element_outside_l(self):
        _, T = _ring(3)
        E = CycField(T**2)
        s = SubextSpec(E, E.full_group, E.subgroup([T + 1]))
        with self.assertRaises(NotInL):
            cog_element_order(s, TorsionElem.generator(T**2))

    def test_cyclic_exponent_needs_degree_p(self):
        _, T = _ring(3)
        E = CycField(T**2)
        s = SubextSpec(E, E.full_group, E.trivial_subgroup())
        with self.assertRaises(HypothesisNotMet):
            cyclic_cog_exponent(s)

    def test_exactness(self):
        _, T = _ring(3)
        E = CycField(T**3)
        self.assertTrue(
            cog_exactness_check(E, E.subgroup([T + 1, T**2 + 1]), E.subgroup([T**2 + 1]), E.trivial_subgroup())
        )

    def test_galois_iff_roots(self):
        _, T = _ring(3)
        E = CycField(T**2)
        s = SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup())
        self.assertTrue(galois_iff_roots_check(s, [TorsionElem.generator(T**2)]))

    def test_galois_iff_roots_rejects_non_generators(self):
        _, T = _ring(3)
        E = CycField(T**3)
        s = SubextSpec(E, E.full_group, E.subgroup([T + 1]))
        with self.assertRaises(HypothesisNotMet):
            galois_iff_roots_check(s, [TorsionElem.generator(T)])

    def test_galois_iff_roots_on_every_generated_subextension(self):
        spec, T = _ring(3)
        for M in (T**2, T * (T + 1)):
            E = CycField(M)
            lattice = subgroup_lattice(E)
            points = [TorsionElem(M, B) for B in residues(spec, M.degree)]
            checked = 0
            for H_upper in lattice:
                for x in points:
                    fixer = [A for A in H_upper.elements if not ((A - 1) * x.B) % M]
                    s = SubextSpec(E, H_upper, E.subgroup(fixer))
                    with self.subTest(M=str(M), upper=H_upper.order, B=str(x.B)):
                        self.assertTrue(fixed_by(E.torsion_point(x), s.H_lower))
                        self.assertTrue(galois_iff_roots_check(s, [x]))
                    checked += 1
            self.assertGreater(checked, 0)

    def test_report(self):
        _, T = _ring(3)
        E = CycField(T**2)
        report = subext_report(SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup()))
        self.assertEqual(report["cog_order"], 9)
        self.assertTrue(report["radical_cyclotomic"])
        self.assertEqual(report["bound"], 9)
        self.assertEqual(report["mu_K"], "T")


class TestRadicalSubextensions(unittest.TestCase):
    def tearDown(self):
        load_caps(refresh=True)

    def test_cyclotomic_steps(self):
        _, T = _ring(3)
        E = CycField(T**2)
        s = SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup())
        self.assertTrue(is_radical(s))
        self.assertTrue(is_radical_cyclotomic(s))
        F = CycField(T)
        base = SubextSpec(F, F.full_group, F.trivial_subgroup())
        self.assertTrue(is_radical(base))
        self.assertFalse(is_radical_cyclotomic(base))
        self.assertTrue(non_p_part_check(base))

    def test_radical_set_contains_top(self):
        _, T = _ring(3)
        E = CycField(T**3)
        H = E.subgroup([T + 1, T**2 + 1])
        self.assertIn(H, radical_subgroup_set(E, H))

    def test_hereditary(self):
        _, T = _ring(3)
        E = CycField(T**3)
        self.assertTrue(
            hereditary_check(E, E.subgroup([T + 1, T**2 + 1]), E.subgroup([T**2 + 1]), E.trivial_subgroup())
        )

    def test_principal_units_structure(self):
        _, T = _ring(3)
        E = CycField(T**5)
        self.assertEqual(group_structure(E.subgroup([T + 1, T**2 + 1, T**4 + 1])), [3, 3, 9])

    def test_c4_criterion_matches_lattice(self):
        s = _c4_instance()
        self.assertTrue(not_radical_via_c_p2(s))
        self.assertNotIn(s.H_lower, radical_subgroup_set(s.field, s.H_upper))
        self.assertFalse(is_radical(s))
        self.assertEqual(intermediate_of_c_p2(s).order, 8)

    def test_c4_fallback_when_too_large(self):
        s = _c4_instance()
        radical_subgroup_set.cache_clear()
        with mock.patch.dict(os.environ, {ENV_CAPS: "cocycles=1"}):
            load_caps(refresh=True)
            self.assertFalse(is_radical(s))

    def test_whole_lattice_sweep(self):
        _, T = _ring(3)
        for M in (T**2, T**3, T * (T + 1)):
            E = CycField(M)
            lattice = subgroup_lattice(E)
            pairs = [(H, K) for H in lattice for K in lattice if K <= H]
            for H_upper, H_lower in pairs:
                s = SubextSpec(E, H_upper, H_lower)
                with self.subTest(M=str(M), upper=H_upper.order, lower=sorted(map(str, H_lower.gens))):
                    self.assertTrue(non_p_part_check(s))
                    if is_radical_cyclotomic(s):
                        self.assertTrue(_is_power_of(s.degree, 3))
                        self.assertTrue(purity_check(s))
                        order, bound, ok = bound_check(s)
                        self.assertTrue(ok)
                        self.assertLessEqual(order, bound)
                        if s.mu_L == s.mu_K:
                            self.assertEqual(order, bound)
                            self.assertTrue(is_elementary_abelian_quotient(s))
                    elif _is_power_of(s.degree, 3):
                        with self.assertRaises(HypothesisNotMet):
                            bound_check(s)
                    if s.degree == 2 and is_radical(s):
                        self.assertFalse(purity_check(s))
            for H_K, H_L in pairs:
                for H_Lp in lattice:
                    if not H_Lp <= H_L:
                        continue
                    with self.subTest(M=str(M), chain=(H_K.order, H_L.order, H_Lp.order)):
                        whole, top, bottom = purity_tower_check(E, H_K, H_L, H_Lp)
                        self.assertEqual(whole, top and bottom)
                        self.assertTrue(hereditary_check(E, H_K, H_L, H_Lp))

    def test_c_p2_needs_equal_mu(self):
        _, T = _ring(3)
        E = CycField(T**2)
        s = SubextSpec(E, E.subgroup([T + 1]), E.trivial_subgroup())
        with self.assertRaises(HypothesisNotMet):
            not_radical_via_c_p2(s)


if __name__ == "__main__":
    unittest.main()
