import unittest

from carlitzlab.carlitz import TorsionElem
from carlitzlab.cycfield import (
    CycField,
    GaloisElem,
    cyc_arith,
    fixed_by,
    galois_act,
    galois_group,
    lambda_orbit,
    subext_degree,
    subgroup_lattice,
    torsion_fixed_by,
    trace_under,
)
from carlitzlab.errors import DivByZero, FieldMismatch, NotNested, ZeroInput
from carlitzlab.gf import field_for_q
from carlitzlab.polyring import Poly, residues


class TestFieldArithmetic(unittest.TestCase):
    def setUp(self):
        self.spec = field_for_q(3)
        self.T = Poly.t(self.spec)

    def test_lambda_t_relation(self):
        E = CycField(self.T)
        lam = E.lam
        self.assertEqual(E.degree, 2)
        self.assertEqual(lam**3, -lam.mul_poly(self.T))

    def test_inverse(self):
        E = CycField(self.T**2)
        x = E.lam + E.one()
        self.assertEqual(x * x.inverse(), E.one())
        self.assertEqual(cyc_arith(x, x, "add"), x + x)
        with self.assertRaises(DivByZero):
            E.zero().inverse()

    def test_rational_coefficients(self):
        E = CycField(self.T**2)
        x = E.element([0, 1]).mul_poly(self.T + 1)
        y = x / E.scalar(self.T + 1)
        self.assertEqual(y, E.lam)

    def test_fields_do_not_mix(self):
        with self.assertRaises(FieldMismatch):
            CycField(self.T).lam + CycField(self.T**2).lam

    def test_rejects_constant_modulus(self):
        with self.assertRaises(ZeroInput):
            CycField(Poly.one(self.spec))


class TestGaloisGroup(unittest.TestCase):
    def setUp(self):
        self.spec = field_for_q(3)
        self.T = Poly.t(self.spec)

    def test_group_of_t(self):
        E = CycField(self.T)
        self.assertEqual(len(galois_group(E)), 2)
        orbit = lambda_orbit(E)
        self.assertEqual(len(set(orbit)), 2)

    def test_principal_units_t5(self):
        E = CycField(self.T**5)
        self.assertEqual(E.subgroup([self.T + 1]).order, 9)

    def test_action_on_lambda(self):
        E = CycField(self.T**2)
        A = self.T + 2
        self.assertEqual(galois_act(GaloisElem(E, A), E.lam), E.image_of_lambda(A))

    def test_action_is_multiplicative(self):
        T = self.T
        for M in (T**2, T * (T + 1)):
            E = CycField(M)
            x = E.lam**2 + E.lam + E.scalar(T)
            sigmas = galois_group(E)
            images = {sigma.A: galois_act(sigma, x) for sigma in sigmas}
            for a in sigmas:
                for b in sigmas:
                    with self.subTest(M=str(M), A=str(a.A), B=str(b.A)):
                        self.assertEqual(galois_act(a, images[b.A]), images[(a * b).A])

    def test_non_unit_rejected(self):
        E = CycField(self.T**2)
        with self.assertRaises(ZeroInput):
            GaloisElem(E, self.T)

    def test_lattice_sweeps(self):
        T = self.T
        expected = {"T^2": (T**2, 6, 4), "T^3": (T**3, 18, 12), "T(T+1)": (T * (T + 1), 4, 5)}
        for label, (M, order, count) in expected.items():
            with self.subTest(M=label):
                E = CycField(M)
                lattice = subgroup_lattice(E)
                self.assertEqual(E.full_group.order, order)
                self.assertEqual(len(lattice), count)
                for H in lattice:
                    self.assertEqual(order % H.order, 0)
                    self.assertEqual(E.subgroup(H.gens), H)


class TestFixedFields(unittest.TestCase):
    def setUp(self):
        self.spec = field_for_q(3)
        self.T = Poly.t(self.spec)

    def test_concrete_and_abstract_agree(self):
        M = self.T**2
        E = CycField(M)
        H = E.subgroup([self.T + 1])
        for B in residues(self.spec, 2):
            x = TorsionElem(M, B)
            with self.subTest(B=str(B)):
                self.assertEqual(fixed_by(E.torsion_point(x), H), torsion_fixed_by(x, H))

    def test_trace_of_lambda(self):
        E = CycField(self.T**2)
        H = E.subgroup([self.T + 1])
        self.assertTrue(trace_under(H, E.lam).is_zero())

    def test_trace_is_fixed_by_every_subgroup(self):
        E = CycField(self.T**2)
        x = E.lam**4 + E.lam.mul_poly(self.T + 1) + E.one()
        for H in subgroup_lattice(E):
            with self.subTest(order=H.order):
                self.assertTrue(fixed_by(trace_under(H, x), H))
                self.assertTrue(fixed_by(trace_under(H, E.lam), H))

    def test_subext_degree(self):
        E = CycField(self.T)
        self.assertEqual(subext_degree(E.full_group, E.trivial_subgroup()), 2)
        with self.assertRaises(NotNested):
            subext_degree(E.trivial_subgroup(), E.full_group)


if __name__ == "__main__":
    unittest.main()
