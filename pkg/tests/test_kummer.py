import unittest

from carlitzlab.carlitz import TorsionElem, carlitz_apply
from carlitzlab.errors import (
    DegreeNotOne,
    HypothesisNotMet,
    InvariantViolation,
    ModulusMismatch,
    NotCoprime,
    WrongOrders,
)
from carlitzlab.gf import field_for_q
from carlitzlab.kummer import (
    MatrixRep,
    carlitz_preimage,
    degree_obstruction,
    kummer_polynomial,
    kummer_splitting_degree,
    preimage_scan,
    primitive_element_check,
    purity_obstruction_check,
    rational_root_in_cyclotomic,
    theta_apply,
    theta_compose,
    theta_group,
    theta_group_order,
    theta_is_abelian,
)
from carlitzlab.polyring import Poly, residues


def _ring(q):
    spec = field_for_q(q)
    return spec, Poly.t(spec)


def _monic(spec, max_degree):
    for d in range(1, max_degree + 1):
        for n in range(spec.q**d):
            yield Poly.monomial(spec, d) + Poly.from_index(spec, n)


class TestCarlitzPreimage(unittest.TestCase):
    def test_one_has_no_preimage(self):
        spec, T = _ring(3)
        self.assertIsNone(carlitz_preimage(T, Poly.one(spec)))
        self.assertIsNone(preimage_scan(T, Poly.one(spec)))

    def test_recovers_u(self):
        spec, T = _ring(3)
        for M, u in ((T, T**2 + 2), (T**2 + 1, T + 1), (T + 2, T**3 + T)):
            with self.subTest(M=str(M), u=str(u)):
                z = carlitz_apply(M, u)
                self.assertEqual(carlitz_preimage(M, z), u)
                self.assertEqual(preimage_scan(M, z), u)

    def test_zero(self):
        spec, T = _ring(3)
        self.assertTrue(carlitz_preimage(T, Poly.zero(spec)).is_zero())

    def test_solvable_exactly_on_the_image(self):
        for q, max_degree in ((2, 2), (3, 1)):
            spec, _ = _ring(q)
            for M in _monic(spec, max_degree):
                top = q**M.degree + 1
                image = {carlitz_apply(M, u) for u in residues(spec, 3)}
                image = {z for z in image if z.degree < top}
                for z in residues(spec, top):
                    with self.subTest(q=q, M=str(M), z=str(z)):
                        u = carlitz_preimage(M, z)
                        if z in image:
                            self.assertEqual(carlitz_apply(M, u), z)
                        else:
                            self.assertIsNone(u)

    def test_recovers_every_small_image(self):
        spec, _ = _ring(3)
        for M in _monic(spec, 2):
            for u in residues(spec, 3):
                z = carlitz_apply(M, u)
                self.assertEqual(carlitz_apply(M, carlitz_preimage(M, z)), z)


class TestKummerDegree(unittest.TestCase):
    def test_degree_is_q_to_deg_p(self):
        for q in (3, 5):
            with self.subTest(q=q):
                spec, T = _ring(q)
                self.assertEqual(kummer_splitting_degree(T, Poly.one(spec)), q)

    def test_carlitz_power_is_rejected(self):
        _, T = _ring(3)
        with self.assertRaises(HypothesisNotMet):
            kummer_splitting_degree(T, carlitz_apply(T, T + 1))

    def test_reducible_p_is_rejected(self):
        spec, T = _ring(3)
        with self.assertRaises(HypothesisNotMet):
            kummer_splitting_degree(T**2, Poly.one(spec))

    def test_rational_roots(self):
        spec, T = _ring(3)
        minus_one = Poly.const(spec, 2)
        F = [minus_one, T, Poly.zero(spec), Poly.one(spec)]
        self.assertEqual(rational_root_in_cyclotomic(F, T), [])
        roots = rational_root_in_cyclotomic(kummer_polynomial(T, Poly.zero(spec)), T)
        self.assertEqual(len(roots), 3)

    def test_rational_roots_need_degree_one(self):
        spec, T = _ring(3)
        with self.assertRaises(DegreeNotOne):
            rational_root_in_cyclotomic([Poly.one(spec), Poly.one(spec)], T**2)


class TestPurityObstruction(unittest.TestCase):
    def test_degree_obstruction(self):
        self.assertTrue(degree_obstruction(3, 1))
        self.assertTrue(degree_obstruction(3, 2))
        self.assertFalse(degree_obstruction(3, 3))
        self.assertFalse(degree_obstruction(5, 3))

    def test_obstruction_report(self):
        for p in (3, 5, 7):
            with self.subTest(p=p):
                report = purity_obstruction_check(p)
                self.assertTrue(report["passed"])
                self.assertEqual(report["t_power_fits"][3], False)


class TestThetaRepresentation(unittest.TestCase):
    def test_group_of_t(self):
        _, T = _ring(3)
        group = theta_group(T)
        self.assertEqual(len(group), 6)
        self.assertEqual(theta_group_order(T), 6)
        self.assertFalse(theta_is_abelian(T))
        with self.assertRaises(InvariantViolation):
            group.abelian_invariants()

    def test_action_is_a_homomorphism(self):
        spec, T = _ring(3)
        N = T + 1
        group = theta_group(N)
        points = list(residues(spec, 1))
        for x in group.elements:
            for y in group.elements:
                for C in points:
                    self.assertEqual(theta_apply(theta_compose(x, y), C), theta_apply(x, theta_apply(y, C)))

    def test_composition_is_associative(self):
        for q, e in ((3, 1), (5, 1), (2, 2)):
            _, T = _ring(q)
            elements = theta_group(T**e).elements
            for x in elements:
                for y in elements:
                    xy = theta_compose(x, y)
                    for z in elements:
                        with self.subTest(q=q, x=x, y=y, z=z):
                            self.assertEqual(theta_compose(xy, z), theta_compose(x, theta_compose(y, z)))

    def test_non_unit_rejected(self):
        _, T = _ring(3)
        with self.assertRaises(NotCoprime):
            MatrixRep(T, T, T)

    def test_moduli_must_match(self):
        _, T = _ring(3)
        with self.assertRaises(ModulusMismatch):
            theta_compose(MatrixRep.identity(T), MatrixRep.identity(T + 1))


class TestPrimitiveElement(unittest.TestCase):
    def test_sum_generates(self):
        spec, T = _ring(3)
        one = Poly.one(spec)
        self.assertTrue(primitive_element_check(T, T + 1, TorsionElem(T, one), TorsionElem(T + 1, one)))

    def test_wrong_orders(self):
        spec, T = _ring(3)
        with self.assertRaises(WrongOrders):
            primitive_element_check(T, T + 1, TorsionElem.zero(T), TorsionElem.generator(T + 1))

    def test_not_coprime(self):
        _, T = _ring(3)
        with self.assertRaises(NotCoprime):
            primitive_element_check(T, T**2, TorsionElem.generator(T), TorsionElem.generator(T**2))


if __name__ == "__main__":
    unittest.main()
