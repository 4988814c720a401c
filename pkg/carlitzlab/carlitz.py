"""The Carlitz module: u^M = M(phi + mu_T)(u) on F_q[T]-algebras.

``CarlitzOp`` is the q-linearized polynomial C_M(X) = sum c_i X^{q^i}.
Torsion points are kept abstract: lambda^B_M is the residue B modulo M, so
the R_T-module Lambda_M is literally R_T/(M).
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from .config import load_caps
from .errors import InvariantViolation, ModulusMismatch, NotAMultiple, ZeroInput, check_cap
from .polyring import Poly, format_poly, monic_divisors, phi, poly_gcd, poly_lcm, poly_mobius, residues

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _t_power_coeffs(spec, k):
    """Coefficients of C_{T^k} via c_i^{T M} = (c_{i-1}^M)^q + T c_i^M."""
    if k == 0:
        return (Poly.one(spec),)
    prev = _t_power_coeffs(spec, k - 1)
    t = Poly.t(spec)
    out = []
    for i in range(k + 1):
        term = prev[i - 1].pow_q() if i >= 1 else Poly.zero(spec)
        if i < len(prev):
            term = term + t * prev[i]
        out.append(term)
    return tuple(out)


class CarlitzOp:
    __slots__ = ("M", "coeffs")

    def __init__(self, M, coeffs):
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        self.M = M
        self.coeffs = tuple(coeffs)

    @property
    def spec(self):
        return self.M.spec

    def __eq__(self, other):
        return isinstance(other, CarlitzOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        zero = Poly.zero(self.spec)
        summed = itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=zero)
        return CarlitzOp(self.M + other.M, tuple(a + b for a, b in summed))

    def scale(self, a):
        return CarlitzOp(self.M.scale(a), tuple(c.scale(a) for c in self.coeffs))

    def compose(self, other):
        """(sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^{q^i} tau^{i+j}."""
        spec = self.spec
        out = [Poly.zero(spec)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            twisted = list(other.coeffs)
            for _ in range(i):
                twisted = [b.pow_q() for b in twisted]
            for j, b in enumerate(twisted):
                out[i + j] = out[i + j] + a * b
        return CarlitzOp(self.M * other.M, tuple(out))

    def x_terms(self):
        """Sparse X-polynomial {q^i: c_i}."""
        q = self.spec.q
        return {q**i: c for i, c in enumerate(self.coeffs) if c}

    def to_json(self):
        q = self.spec.q
        return {
            "M": format_poly(self.M),
            "terms": [
                {"x_power": q**i, "coeff": format_poly(c)} for i, c in enumerate(self.coeffs) if c
            ],
        }

    def __repr__(self):
        q = self.spec.q
        terms = [f"({format_poly(c)})*X^{q**i}" for i, c in reversed(list(enumerate(self.coeffs))) if c]
        return f"CarlitzOp({' + '.join(terms) or '0'})"


def carlitz_coeffs(M):
    spec = M.spec
    coeffs = [Poly.zero(spec)] * (max(len(M.c), 1))
    for k, a in enumerate(M.c):
        if a:
            for i, c in enumerate(_t_power_coeffs(spec, k)):
                coeffs[i] = coeffs[i] + c.scale(a)
    return CarlitzOp(M, tuple(coeffs))


class CarlitzAlgebra:
    """An F_q-algebra with a T-action, as ``carlitz_apply`` needs it."""

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def scale(self, a, c):
        """Multiply by the F_q code c."""
        raise NotImplementedError

    def pow_q(self, a):
        raise NotImplementedError

    def mul_t(self, a):
        raise NotImplementedError


class PolyAlgebra(CarlitzAlgebra):
    """R_T (and k) acting on itself."""

    def __init__(self, spec):
        self.spec = spec
        self._t = Poly.t(spec)

    def zero(self):
        return Poly.zero(self.spec)

    def add(self, a, b):
        return a + b

    def scale(self, a, c):
        return a.scale(c)

    def pow_q(self, a):
        return a.pow_q()

    def mul_t(self, a):
        return a * self._t


def carlitz_apply(M, x, algebra=None):
    """Evaluate C_M(x) by the T-power recurrence y_{k+1} = y_k^q + T y_k."""
    algebra = algebra or PolyAlgebra(M.spec)
    total = algebra.zero()
    y = x
    for k, a in enumerate(M.c):
        if a:
            total = algebra.add(total, algebra.scale(y, a))
        if k + 1 < len(M.c):
            y = algebra.add(algebra.pow_q(y), algebra.mul_t(y))
    return total


# -- cyclotomic polynomials ------------------------------------------------


def _sparse_mul(f, g):
    out = {}
    for i, a in f.items():
        for j, b in g.items():
            term = a * b
            if i + j in out:
                term = out[i + j] + term
            if term:
                out[i + j] = term
            else:
                out.pop(i + j, None)
    return out


def _exact_div(num, den):
    """Divide sparse X-polynomials; den must be monic in X."""
    spec = next(iter(num.values())).spec
    top = max(den)
    if not den[top].is_one():
        raise InvariantViolation("cyclotomic divisor is not monic in X")
    rest = dict(num)
    deg = max(rest)
    quot = [Poly.zero(spec)] * (deg - top + 1)
    lower = [(e, c) for e, c in den.items() if e != top]
    for k in range(deg, top - 1, -1):
        coef = rest.pop(k, None)
        if not coef:
            continue
        quot[k - top] = coef
        for e, c in lower:
            j = k - top + e
            term = rest.get(j, Poly.zero(spec)) - coef * c
            if term:
                rest[j] = term
            else:
                rest.pop(j, None)
    if rest:
        raise InvariantViolation("inexact division while assembling a cyclotomic polynomial")
    return tuple(quot)


@dataclass(frozen=True)
class CycPoly:
    """Psi_M(X) with dense R_T coefficients, lowest X-degree first."""

    M: Poly
    coeffs: tuple

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def to_json(self):
        return {
            "M": format_poly(self.M),
            "degree": self.degree,
            "terms": [
                {"x_power": k, "coeff": format_poly(c)} for k, c in reversed(list(enumerate(self.coeffs))) if c
            ],
        }


def cyclotomic_poly(M):
    if M.degree < 1 or not M.is_monic():
        raise ZeroInput(f"cyclotomic_poly needs a monic nonconstant M, got {format_poly(M)}.")
    check_cap(f"cyclotomic polynomial of degree {M.degree}", M.degree, load_caps(), "factor_degree")
    return _cyclotomic_cached(M)


@lru_cache(maxsize=256)
def _cyclotomic_cached(M):
    num, den = {0: Poly.one(M.spec)}, {0: Poly.one(M.spec)}
    # the Moebius exponents sum to zero, so each C_N may lose its factor X
    for D in monic_divisors(M):
        sign = poly_mobius(D)
        if sign == 0:
            continue
        factor = {e - 1: c for e, c in carlitz_coeffs(M // D).x_terms().items()}
        if sign > 0:
            num = _sparse_mul(num, factor)
        else:
            den = _sparse_mul(den, factor)
    coeffs = _exact_div(num, den)
    if len(coeffs) - 1 != phi(M):
        raise InvariantViolation(f"deg Psi_{format_poly(M)} = {len(coeffs) - 1} differs from Phi")
    logger.debug("Psi_%s has degree %d", format_poly(M), len(coeffs) - 1)
    return CycPoly(M, coeffs)


# -- the torsion module Lambda_M ---------------------------------------------


class TorsionElem:
    """lambda^B_M, stored as the residue B modulo the monic M."""

    __slots__ = ("M", "B")

    def __init__(self, M, B):
        if not M:
            raise ZeroInput("Lambda_0 is not defined.")
        if not M.is_monic():
            raise ModulusMismatch(f"Torsion modulus must be monic, got {format_poly(M)}.")
        self.M = M
        self.B = B % M

    @classmethod
    def generator(cls, M):
        return cls(M, Poly.one(M.spec))

    @classmethod
    def zero(cls, M):
        return cls(M, Poly.zero(M.spec))

    def is_zero(self):
        return not self.B

    def __eq__(self, other):
        return isinstance(other, TorsionElem) and self.M == other.M and self.B == other.B

    def __hash__(self):
        return hash((self.M, self.B))

    def __add__(self, other):
        return torsion_add(self, other)

    def __neg__(self):
        return TorsionElem(self.M, -self.B)

    def __repr__(self):
        return f"TorsionElem({self})"

    def __str__(self):
        return f"lambda[{format_poly(self.B)} mod {format_poly(self.M)}]"


def torsion_add(x, y):
    if x.M != y.M:
        raise ModulusMismatch(f"{x} and {y} live in different torsion modules; embed first.")
    return TorsionElem(x.M, x.B + y.B)


def torsion_act(N, x):
    return TorsionElem(x.M, N * x.B)


def torsion_order(x):
    return (x.M // poly_gcd(x.M, x.B)).monic()


def torsion_embed(x, M2):
    quot, rem = divmod(M2, x.M)
    if rem or not M2.is_monic():
        raise NotAMultiple(f"{format_poly(M2)} is not a monic multiple of {format_poly(x.M)}.")
    return TorsionElem(M2, x.B * quot)


def module_exponent(xs, spec=None):
    out = None
    for x in xs:
        order = torsion_order(x)
        out = order if out is None else poly_lcm(out, order)
    if out is None:
        if spec is None:
            raise ZeroInput("The exponent of an empty list needs the field spec.")
        return Poly.one(spec)
    return out


def torsion_points(M):
    """All q^{deg M} points of Lambda_M."""
    check_cap(f"Lambda_{format_poly(M)}", M.spec.q ** M.degree, load_caps(), "module_size")
    return [TorsionElem(M, B) for B in residues(M.spec, M.degree)]
