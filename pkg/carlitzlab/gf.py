"""Finite fields F_q, q = p^nu.

Elements are plain integers ``code = c_0 + c_1 p + ... + c_{nu-1} p^{nu-1}``
holding the coordinates of the element in the basis 1, w, ..., w^{nu-1},
where w is a root of the field modulus. ``FieldSpec`` owns the arithmetic
tables; ``GFElem`` is the user-facing value wrapper.
"""

import itertools
import logging
from functools import lru_cache

import sympy
import sympy.polys.galoistools as gf
from sympy.polys.domains import ZZ

from .config import load_caps
from .errors import DivByZero, SpecMismatch, check_cap

logger = logging.getLogger(__name__)

# Low-degree-first coefficients of the shipped moduli.
DEFAULT_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (1, 0, 1),
    25: (2, 0, 1),
}


def _hi(coords):
    """Low-first coordinates to the high-first lists galoistools expects."""
    return gf.gf_strip([ZZ(c) for c in reversed(coords)])


def _lo(poly, length):
    coords = [int(c) for c in reversed(poly)]
    return coords + [0] * (length - len(coords))


def is_irreducible(coords, p):
    return gf.gf_irreducible_p(_hi(coords), p, ZZ)


def first_irreducible(p, nu):
    """First monic irreducible of degree nu over F_p, lexicographic on coefficients."""
    for tail in itertools.product(range(p), repeat=nu):
        coords = tuple(reversed(tail)) + (1,)
        if is_irreducible(coords, p):
            return coords
    raise AssertionError(f"no irreducible of degree {nu} over F_{p}")


class FieldSpec:
    """The field F_q with tables built once at construction."""

    def __init__(self, p, nu=1, modulus=None):
        if not isinstance(p, int) or not sympy.isprime(p):
            raise SpecMismatch(f"p must be a prime integer, got {p!r}.")
        if nu < 1:
            raise SpecMismatch(f"nu must be positive, got {nu!r}.")
        self.p = p
        self.nu = nu
        self.q = p**nu
        check_cap(f"F_{self.q}", self.q, load_caps(), "field_size")
        if nu == 1:
            if modulus is not None:
                raise SpecMismatch("A prime field takes no modulus.")
            self.modulus = None
        else:
            modulus = tuple(modulus) if modulus is not None else self._default_modulus()
            if len(modulus) != nu + 1 or modulus[-1] != 1:
                raise SpecMismatch(f"Modulus must be monic of degree {nu}, got {modulus!r}.")
            if any(not 0 <= c < p for c in modulus):
                raise SpecMismatch(f"Modulus coefficients must lie in 0..{p - 1}.")
            if not is_irreducible(modulus, p):
                raise SpecMismatch(f"Modulus {modulus!r} is reducible over F_{p}.")
            self.modulus = modulus
            self._build_tables()

    def _default_modulus(self):
        if self.q in DEFAULT_MODULI:
            return DEFAULT_MODULI[self.q]
        logger.debug("searching an irreducible modulus for q=%d", self.q)
        return first_irreducible(self.p, self.nu)

    def _build_tables(self):
        p, nu, q = self.p, self.nu, self.q
        digits = [self.coords(a) for a in range(q)]
        self._add = [
            [self.from_coords([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
            for a in range(q)
        ]
        self._neg = [self.from_coords([(-x) % p for x in digits[a]]) for a in range(q)]
        modulus = _hi(self.modulus)

        def times(a, b):
            prod = gf.gf_rem(gf.gf_mul(_hi(digits[a]), _hi(digits[b]), p, ZZ), modulus, p, ZZ)
            return self.from_coords(_lo(prod, nu))

        # exp/log tables from the first primitive element
        for g in range(2, q):
            exp = [1]
            for _ in range(q - 2):
                exp.append(times(exp[-1], g))
            if len(set(exp)) == q - 1:
                break
        else:
            raise AssertionError("multiplicative group is not cyclic")
        self._exp = exp
        self._log = [0] * q
        for k, a in enumerate(exp):
            self._log[a] = k
        logger.debug("built tables for F_%d with primitive element %d", q, g)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.nu, self.modulus) == (
            other.p,
            other.nu,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.nu, self.modulus))

    def __repr__(self):
        if self.modulus is None:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.q}, modulus={format_modulus(self.modulus)})"

    def coords(self, a):
        out = []
        for _ in range(self.nu):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coords(self, coords):
        code = 0
        for c in reversed(coords):
            code = code * self.p + c
        return code

    def add(self, a, b):
        if self.nu == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a):
        if self.nu == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.nu == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise DivByZero("Division by zero in F_q.")
        if self.nu == 1:
            return pow(a, -1, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if n < 0:
            return self.power(self.inv(a), -n)
        if self.nu == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        return self._exp[self._log[a] * n % (self.q - 1)]

    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def elements(self):
        return list(range(self.q))

    def format(self, a):
        if self.nu == 1:
            return str(a)
        return format_w_poly(self.coords(a)) or "0"


def format_w_poly(coords, var="w"):
    terms = []
    for k in range(len(coords) - 1, -1, -1):
        c = coords[k]
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        power = var if k == 1 else f"{var}^{k}"
        terms.append(power if c == 1 else f"{c}*{power}")
    return "+".join(terms)


def format_modulus(modulus):
    return format_w_poly(list(modulus))


@lru_cache(maxsize=None)
def field_spec(p, nu=1, modulus=None):
    """Shared ``FieldSpec`` per (p, nu, modulus)."""
    return FieldSpec(p, nu, modulus)


@lru_cache(maxsize=None)
def field_for_q(q, modulus=None):
    factors = sympy.factorint(q)
    if len(factors) != 1:
        raise SpecMismatch(f"q must be a prime power, got {q}.")
    (p, nu), = factors.items()
    return field_spec(p, nu, tuple(modulus) if modulus is not None else None)


class GFElem:
    """An element of F_q bound to its ``FieldSpec``."""

    __slots__ = ("spec", "code")

    def __init__(self, spec, code):
        self.spec = spec
        self.code = code % spec.q if spec.nu == 1 else code
        if not 0 <= self.code < spec.q:
            raise SpecMismatch(f"Code {code} is not an element of F_{spec.q}.")

    @classmethod
    def from_coords(cls, spec, coords):
        return cls(spec, spec.from_coords([c % spec.p for c in coords]))

    def coords(self):
        return self.spec.coords(self.code)

    def _check(self, other):
        if not isinstance(other, GFElem):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec!r} and {other.spec!r} differ.")
        return other

    def __add__(self, other):
        return gf_arith(self, other, "add")

    def __sub__(self, other):
        return gf_arith(self, other, "sub")

    def __mul__(self, other):
        return gf_arith(self, other, "mul")

    def __truediv__(self, other):
        return gf_arith(self, other, "div")

    def __neg__(self):
        return GFElem(self.spec, self.spec.neg(self.code))

    def __pow__(self, n):
        return GFElem(self.spec, self.spec.power(self.code, n))

    def __eq__(self, other):
        return isinstance(other, GFElem) and other.spec == self.spec and other.code == self.code

    def __hash__(self):
        return hash((self.spec, self.code))

    def __repr__(self):
        return f"GFElem({self.spec.format(self.code)})"

    def __str__(self):
        return self.spec.format(self.code)


_OPS = ("add", "sub", "mul", "div")


def gf_arith(a, b, op):
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec!r} and {b.spec!r} differ.")
    if op not in _OPS:
        raise ValueError(f"Unknown field operation {op!r}.")
    return GFElem(a.spec, getattr(a.spec, op)(a.code, b.code))


def gf_frobenius_q(a):
    return a ** a.spec.q


def gf_frobenius_p(a):
    """The absolute Frobenius a -> a^p, a generator of Gal(F_q/F_p)."""
    return a ** a.spec.p


def gf_enumerate(spec):
    check_cap(f"F_{spec.q} enumeration", spec.q, load_caps(), "field_size")
    return [GFElem(spec, code) for code in spec.elements()]
