import random
import unittest

from carlitzlab.errors import DivByZero, ParseError, SpecMismatch, ZeroInput
from carlitzlab.gf import field_for_q
from carlitzlab.polyring import (
    Poly,
    RatFn,
    format_poly,
    is_irreducible,
    monic_divisors,
    parse_poly,
    phi,
    poly_arith,
    poly_factor,
    poly_gcd,
    poly_inverse_mod,
    poly_mobius,
    poly_xgcd,
    residues,
    unit_residues,
)


def random_poly(rng, spec, degree):
    return Poly(spec, [rng.randrange(spec.q) for _ in range(degree + 1)])


class TestGrammar(unittest.TestCase):
    def setUp(self):
        self.spec = field_for_q(3)

    def test_parse_and_format(self):
        f = parse_poly("T^2+2*T+1", self.spec)
        self.assertEqual(f.c, (1, 2, 1))
        self.assertEqual(format_poly(f), "T^2+2*T+1")
        self.assertEqual(parse_poly("1 - T", self.spec).c, (1, 2))

    def test_zero(self):
        self.assertTrue(parse_poly("0", self.spec).is_zero())
        self.assertEqual(format_poly(Poly.zero(self.spec)), "0")

    def test_coefficient_out_of_range(self):
        with self.assertRaises(ParseError):
            parse_poly("3*T", self.spec)

    def test_malformed(self):
        for text in ("", "T^2 T", "T^", "*T"):
            with self.subTest(text=text), self.assertRaises(ParseError):
                parse_poly(text, self.spec)

    def test_extension_coefficients(self):
        spec = field_for_q(9)
        f = parse_poly("(w+1)*T+w", spec)
        self.assertEqual(f.c, (3, 4))
        self.assertEqual(format_poly(f), "(w+1)*T+w")

    def test_w_needs_extension_field(self):
        with self.assertRaises(ParseError):
            parse_poly("(w)*T", self.spec)
        with self.assertRaises(ParseError):
            parse_poly("2*w*T", self.spec)

    def test_scaled_w_coefficients(self):
        spec = field_for_q(9)
        w = spec.from_coords([0, 1])
        two_w = spec.mul(2, w)
        self.assertEqual(parse_poly("2*w", spec).c, (two_w,))
        self.assertEqual(parse_poly("2*w*T+1", spec).c, (1, two_w))
        self.assertEqual(parse_poly("T + 2 * w + 1", spec).c, (spec.add(two_w, 1), 1))

    def test_format_then_parse_is_identity(self):
        for q in (4, 8, 9, 25):
            spec = field_for_q(q)
            for f in residues(spec, 2):
                text = format_poly(f)
                with self.subTest(q=q, text=text):
                    self.assertEqual(parse_poly(text, spec), f)


class TestArithmetic(unittest.TestCase):
    def test_division_identity(self):
        rng = random.Random(7)
        for q in (2, 3, 4, 5, 9):
            spec = field_for_q(q)
            for _ in range(20):
                a = random_poly(rng, spec, rng.randrange(8))
                b = random_poly(rng, spec, rng.randrange(1, 5))
                if b.is_zero():
                    continue
                quot, rem = divmod(a, b)
                self.assertEqual(quot * b + rem, a)
                self.assertLess(rem.degree, b.degree)

    def test_division_by_zero(self):
        spec = field_for_q(3)
        with self.assertRaises(DivByZero):
            divmod(Poly.t(spec), Poly.zero(spec))

    def test_xgcd(self):
        rng = random.Random(11)
        spec = field_for_q(5)
        for _ in range(20):
            a = random_poly(rng, spec, 5)
            b = random_poly(rng, spec, 3)
            g, s1, s2 = poly_xgcd(a, b)
            self.assertEqual(a * s1 + b * s2, g)
            if not g.is_zero():
                self.assertEqual(g, poly_gcd(a, b))

    def test_pow_q_is_frobenius(self):
        spec = field_for_q(3)
        f = parse_poly("T^2+2*T+1", spec)
        self.assertEqual(f.pow_q(), f**3)

    def test_index_round_trip(self):
        spec = field_for_q(4)
        for n in range(64):
            self.assertEqual(Poly.from_index(spec, n).index(), n)

    def test_ring_operations_by_name(self):
        spec = field_for_q(3)
        a, b = parse_poly("T^3+1", spec), parse_poly("T+2", spec)
        self.assertEqual(poly_arith(a, b, "add"), a + b)
        self.assertEqual(poly_arith(a, b, "mul"), a * b)
        quot, rem = poly_arith(a, b, "divrem")
        self.assertEqual(quot * b + rem, a)
        with self.assertRaises(SpecMismatch):
            poly_arith(a, Poly.t(field_for_q(5)), "add")

    def test_inverse_mod(self):
        spec = field_for_q(3)
        m = parse_poly("T^3", spec)
        for a in unit_residues(m):
            self.assertTrue(((a * poly_inverse_mod(a, m)) % m).is_one())
        with self.assertRaises(DivByZero):
            poly_inverse_mod(Poly.t(spec), m)


class TestRationalFunctions(unittest.TestCase):
    def test_normal_form(self):
        spec = field_for_q(3)
        T = Poly.t(spec)
        r = RatFn(T * (T + 1), (T + 1) * 2)
        self.assertTrue(r.den.is_one())
        self.assertEqual(r, RatFn(T * 2))

    def test_field_operations(self):
        spec = field_for_q(3)
        T = Poly.t(spec)
        a = RatFn(T + 1, T)
        b = RatFn(T, T + 2)
        self.assertEqual((a * b) / b, a)
        self.assertEqual(a - a, RatFn(Poly.zero(spec)))
        with self.assertRaises(DivByZero):
            RatFn(Poly.zero(spec)).inverse()


class TestFactorization(unittest.TestCase):
    def test_phi_matches_count(self):
        for q in (2, 3, 4, 5):
            spec = field_for_q(q)
            for d in range(1, 5):
                nonzero = [b for b in residues(spec, d) if b]
                for n in range(q**d):
                    m = Poly.monomial(spec, d) + Poly.from_index(spec, n)
                    count = sum(1 for b in nonzero if poly_gcd(b, m).is_one())
                    self.assertEqual(phi(m), count, msg=f"q={q} {format_poly(m)}")

    def test_phi_sums_to_norm_over_divisors(self):
        for q in (2, 3, 5):
            spec = field_for_q(q)
            for n in range(q**4):
                m = Poly.monomial(spec, 4) + Poly.from_index(spec, n)
                self.assertEqual(sum(phi(D) for D in monic_divisors(m)), q**4, msg=format_poly(m))

    def test_phi_values(self):
        spec = field_for_q(3)
        T = Poly.t(spec)
        self.assertEqual(phi(T), 2)
        self.assertEqual(phi(T**2), 6)
        self.assertEqual(phi(Poly.one(spec)), 1)

    def test_recompose(self):
        rng = random.Random(3)
        for q in (2, 3, 4):
            spec = field_for_q(q)
            for _ in range(15):
                m = random_poly(rng, spec, rng.randrange(1, 7))
                if m.degree < 1:
                    continue
                fac = poly_factor(m)
                self.assertEqual(fac.recompose(), m)
                for prime, _ in fac.factors:
                    self.assertTrue(is_irreducible(prime))

    def test_mobius(self):
        spec = field_for_q(3)
        T = Poly.t(spec)
        self.assertEqual(poly_mobius(T), -1)
        self.assertEqual(poly_mobius(T * (T + 1)), 1)
        self.assertEqual(poly_mobius(T**2), 0)

    def test_divisors(self):
        spec = field_for_q(3)
        T = Poly.t(spec)
        divisors = monic_divisors(T**2 * (T + 1))
        self.assertEqual(len(divisors), 6)
        self.assertEqual(divisors[0], Poly.one(spec))

    def test_units(self):
        spec = field_for_q(3)
        T = Poly.t(spec)
        self.assertEqual(len(unit_residues(T**2)), 6)

    def test_zero_input(self):
        spec = field_for_q(3)
        with self.assertRaises(ZeroInput):
            phi(Poly.zero(spec))
        with self.assertRaises(ZeroInput):
            poly_factor(Poly.zero(spec))


if __name__ == "__main__":
    unittest.main()
