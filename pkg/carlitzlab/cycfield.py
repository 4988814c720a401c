"""The cyclotomic function field k(Lambda_M) = k[X]/(Psi_M) and its Galois group.

An element is stored as a vector of R_T numerators over one common monic
denominator, in the basis 1, lambda, ..., lambda^{Phi(M)-1}, where lambda
is the class of X. The Galois group is (R_T/(M))^*, sigma_A sending lambda
to C_A(lambda).
"""

import logging
from functools import cached_property, lru_cache

from .carlitz import CarlitzAlgebra, carlitz_apply, cyclotomic_poly, torsion_embed
from .config import load_caps
from .errors import DivByZero, FieldMismatch, NotNested, ZeroInput, check_cap
from .groups import FiniteGroup, closure
from .polyring import Poly, RatFn, format_poly, phi, poly_factor, poly_gcd, is_unit_mod, unit_residues

logger = logging.getLogger(__name__)


class CycField(CarlitzAlgebra):
    def __init__(self, M):
        if M.degree < 1 or not M.is_monic():
            raise ZeroInput(f"k(Lambda_M) needs a monic nonconstant M, got {format_poly(M)}.")
        self.M = M
        self.spec = M.spec
        self.degree = phi(M)
        self._primes = tuple(poly_factor(M).primes())

    def __eq__(self, other):
        return isinstance(other, CycField) and self.M == other.M

    def __hash__(self):
        return hash(("CycField", self.M))

    def __repr__(self):
        return f"CycField(M={format_poly(self.M)}, q={self.spec.q})"

    @cached_property
    def psi(self):
        return cyclotomic_poly(self.M)

    # -- elements -------------------------------------------------------

    def element(self, coeffs):
        """Element from a list of RatFn/Poly/int coefficients in the power basis."""
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise FieldMismatch(f"{len(coeffs)} coefficients for a field of degree {self.degree}.")
        rats = [self._as_ratfn(c) for c in coeffs]
        den = Poly.one(self.spec)
        for r in rats:
            den = (den * r.den // poly_gcd(den, r.den)).monic()
        nums = [r.num * (den // r.den) for r in rats]
        return CycElem(self, nums, den)

    def _as_ratfn(self, c):
        if isinstance(c, RatFn):
            return c
        if isinstance(c, Poly):
            return RatFn(c)
        return RatFn.from_int(self.spec, c)

    def zero(self):
        return CycElem(self, [], Poly.one(self.spec))

    def one(self):
        return self.scalar(RatFn(Poly.one(self.spec)))

    def scalar(self, r):
        if isinstance(r, Poly):
            r = RatFn(r)
        return CycElem(self, [r.num], r.den)

    @cached_property
    def lam(self):
        """The primitive root lambda_M, i.e. the class of X."""
        if self.degree == 1:
            # Psi_M = X + c_0, so lambda = -c_0
            return self.scalar(-self.psi.coeffs[0])
        return CycElem(self, [Poly.zero(self.spec), Poly.one(self.spec)], Poly.one(self.spec))

    def _reduce(self, nums):
        psi = self.psi.coeffs
        n = self.degree
        nums = list(nums)
        for k in range(len(nums) - 1, n - 1, -1):
            coef = nums[k]
            if not coef:
                continue
            for j in range(n):
                if psi[j]:
                    nums[k - n + j] = nums[k - n + j] - coef * psi[j]
        return nums[:n]

    # -- CarlitzAlgebra ---------------------------------------------------

    def add(self, a, b):
        return a + b

    def scale(self, a, c):
        return a.scale_const(c)

    def pow_q(self, a):
        return a ** self.spec.q

    def mul_t(self, a):
        return a.mul_poly(Poly.t(self.spec))

    # -- Galois group ---------------------------------------------------

    def galois_elem(self, A):
        return GaloisElem(self, A)

    def is_unit(self, A):
        return bool(A % self.M) and is_unit_mod(A, self._primes)

    def subgroup(self, gens):
        """The closure of generator lifts, as a ``Subgroup``."""
        lifts = []
        for A in gens:
            A = A.A if isinstance(A, GaloisElem) else A
            if not self.is_unit(A):
                raise ZeroInput(f"{format_poly(A)} is not a unit modulo {format_poly(self.M)}.")
            lifts.append(A % self.M)
        one = Poly.one(self.spec)
        check_cap(f"closure in (R_T/({format_poly(self.M)}))^*", self.degree, load_caps(), "residues")
        elements = closure(lifts, lambda a, b: (a * b) % self.M, one)
        logger.debug("closure of %d generators modulo %s has order %d", len(lifts), format_poly(self.M), len(elements))
        return Subgroup(self, elements, lifts)

    def trivial_subgroup(self):
        return self.subgroup([])

    @cached_property
    def full_group(self):
        return Subgroup(self, unit_residues(self.M), None)

    def torsion_point(self, x):
        """Concrete image of lambda^B_D (D | M) in this field: C_{B M/D}(lambda)."""
        x = torsion_embed(x, self.M)
        return carlitz_apply(x.B, self.lam, self)

    @lru_cache(maxsize=None)
    def image_of_lambda(self, A):
        return carlitz_apply(A, self.lam, self)

    @lru_cache(maxsize=None)
    def _table_group(self):
        residues = unit_residues(self.M)
        check_cap(f"Galois group of {self!r}", len(residues), load_caps(), "lattice_order")
        return FiniteGroup.from_operation(
            residues, lambda a, b: (a * b) % self.M, name=f"Gal({format_poly(self.M)})", cap_key="lattice_order"
        )


class CycElem:
    __slots__ = ("field", "nums", "den")

    def __init__(self, field, nums, den):
        nums = list(nums)
        while nums and not nums[-1]:
            nums.pop()
        if not nums:
            den = Poly.one(field.spec)
        elif not den.is_one():
            g = den
            for a in nums:
                if g.is_one():
                    break
                g = poly_gcd(g, a)
            if not g.is_one():
                nums = [a // g for a in nums]
                den = den // g
            lead = den.lead
            if lead != 1:
                inv = field.spec.inv(lead)
                nums = [a.scale(inv) for a in nums]
                den = den.scale(inv)
        self.field = field
        self.nums = tuple(nums)
        self.den = den

    @property
    def coeffs(self):
        """The RatFn coefficient vector of length Phi(M)."""
        zero = Poly.zero(self.field.spec)
        padded = self.nums + (zero,) * (self.field.degree - len(self.nums))
        return [RatFn(a, self.den) for a in padded]

    def _check(self, other):
        if not isinstance(other, CycElem):
            raise FieldMismatch(f"{other!r} is not a field element.")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} and {other.field!r} differ.")

    def is_zero(self):
        return not self.nums

    def __bool__(self):
        return bool(self.nums)

    def __eq__(self, other):
        return (
            isinstance(other, CycElem)
            and other.field == self.field
            and self.nums == other.nums
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.nums, self.den))

    def __add__(self, other):
        self._check(other)
        a, b = self.nums, other.nums
        if self.den == other.den:
            da = db = Poly.one(self.field.spec)
            den = self.den
        else:
            g = poly_gcd(self.den, other.den)
            da, db = other.den // g, self.den // g
            den = self.den * da
        n = max(len(a), len(b))
        zero = Poly.zero(self.field.spec)
        nums = [
            (a[i] if i < len(a) else zero) * da + (b[i] if i < len(b) else zero) * db for i in range(n)
        ]
        return CycElem(self.field, nums, den)

    def __neg__(self):
        return CycElem(self.field, [-a for a in self.nums], self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        a, b = self.nums, other.nums
        if not a or not b:
            return self.field.zero()
        zero = Poly.zero(self.field.spec)
        prod = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = prod[i + j] + x * y
        return CycElem(self.field, self.field._reduce(prod), self.den * other.den)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale_const(self, c):
        return CycElem(self.field, [a.scale(c) for a in self.nums], self.den)

    def mul_poly(self, f):
        return CycElem(self.field, [a * f for a in self.nums], self.den)

    def mul_scalar(self, r):
        return CycElem(self.field, [a * r.num for a in self.nums], self.den * r.den)

    def inverse(self):
        """Inverse through the extended Euclidean algorithm in k[X] against Psi_M."""
        if not self.nums:
            raise DivByZero("Inverse of zero in k(Lambda_M).")
        field = self.field
        f = [RatFn(a) for a in self.nums]
        psi = [RatFn(c) for c in field.psi.coeffs]
        g, s = _kx_inverse(f, psi, field.spec)
        s = [c * RatFn(self.den) for c in s]
        inv_g = g[0].inverse()
        return field.element([c * inv_g for c in s])

    def __truediv__(self, other):
        return self * other.inverse()

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        terms = [f"({RatFn(a, self.den)})*l^{i}" for i, a in enumerate(self.nums) if a]
        return f"CycElem({' + '.join(terms) or '0'})"


def _kx_strip(f):
    while f and not f[-1]:
        f.pop()
    return f


def _kx_divmod(f, g):
    f = list(f)
    inv = g[-1].inverse()
    quot = [RatFn(Poly.zero(g[0].spec))] * max(len(f) - len(g) + 1, 0)
    for k in range(len(f) - len(g), -1, -1):
        coef = f[k + len(g) - 1] * inv
        if not coef:
            continue
        quot[k] = coef
        for j, c in enumerate(g):
            f[k + j] = f[k + j] - coef * c
    return _kx_strip(quot), _kx_strip(f[: len(g) - 1])


def _kx_mul_sub(a, quot, b):
    """a - quot*b over k[X]."""
    zero = RatFn(Poly.zero(quot[0].spec)) if quot else None
    out = list(a)
    for i, x in enumerate(quot):
        for j, y in enumerate(b):
            while len(out) <= i + j:
                out.append(zero)
            out[i + j] = out[i + j] - x * y
    return _kx_strip(out)


def _kx_inverse(f, psi, spec):
    """(g, s) with s*f = g mod psi and g a nonzero constant."""
    one = RatFn(Poly.one(spec))
    r0, r1 = list(psi), _kx_strip(list(f))
    s0, s1 = [], [one]
    while len(r1) > 1:
        quot, rem = _kx_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _kx_mul_sub(s0, quot, s1)
        if not r1:
            raise DivByZero("element shares a factor with Psi_M")
    return r1, s1


class GaloisElem:
    """sigma_A: lambda_M -> lambda_M^A = C_A(lambda_M)."""

    __slots__ = ("field", "A")

    def __init__(self, field, A):
        A = A % field.M
        if not field.is_unit(A):
            raise ZeroInput(f"{format_poly(A)} is not a unit modulo {format_poly(field.M)}.")
        self.field = field
        self.A = A

    def __eq__(self, other):
        return isinstance(other, GaloisElem) and self.field == other.field and self.A == other.A

    def __hash__(self):
        return hash(("sigma", self.A))

    def __mul__(self, other):
        if other.field != self.field:
            raise FieldMismatch("Galois elements of different fields.")
        return GaloisElem(self.field, self.A * other.A)

    def __repr__(self):
        return f"sigma[{format_poly(self.A)}]"


class Subgroup:
    """A subgroup of (R_T/(M))^* given by its sorted lifts."""

    def __init__(self, field, elements, gens=None):
        self.field = field
        self.elements = tuple(sorted(elements, key=Poly.sort_key))
        self._set = frozenset(self.elements)
        self.gens = tuple(gens) if gens is not None else self.elements

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, A):
        return (A % self.field.M) in self._set

    def __le__(self, other):
        return self._set <= other._set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.field == other.field and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def galois_elems(self):
        return [GaloisElem(self.field, A) for A in self.elements]

    def to_json(self):
        return [format_poly(A) for A in self.elements]

    def __repr__(self):
        gens = ",".join(format_poly(A) for A in self.gens[:4])
        return f"Subgroup(order={self.order}, gens=[{gens}])"


def cyc_arith(a, b, op):
    if op == "inv":
        return a.inverse()
    a._check(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown field operation {op!r}.")


def galois_act(sigma, x):
    """Apply sigma_A to x = sum a_i lambda^i by Horner in y = C_A(lambda)."""
    field = sigma.field
    if x.field != field:
        raise FieldMismatch(f"{field!r} and {x.field!r} differ.")
    if sigma.A.is_one() or len(x.nums) <= 1:
        return x
    y = field.image_of_lambda(sigma.A)
    acc = field.scalar(x.nums[-1])
    for a in reversed(x.nums[:-1]):
        acc = acc * y
        if a:
            acc = acc + field.scalar(a)
    return CycElem(field, acc.nums, acc.den * x.den)


def galois_group(field):
    return field.full_group.galois_elems()


def subgroup_lattice(field):
    group = field._table_group()
    out = []
    for sub in group.subgroup_lattice():
        lifts = [group.elements[i] for i in sub]
        gens = [group.elements[i] for i in group.generators_idx(sub)]
        out.append(Subgroup(field, lifts, gens))
    return out


def fixed_by(x, H):
    if x.field != H.field:
        raise FieldMismatch(f"{x.field!r} and {H.field!r} differ.")
    return all(galois_act(GaloisElem(H.field, A), x) == x for A in H.gens)


def trace_under(H, x):
    if x.field != H.field:
        raise FieldMismatch(f"{x.field!r} and {H.field!r} differ.")
    total = x.field.zero()
    for A in H.elements:
        total = total + galois_act(GaloisElem(H.field, A), x)
    return total


def subext_degree(H_K, H_L):
    if H_K.field != H_L.field:
        raise FieldMismatch("Subgroups of different fields.")
    if not H_L <= H_K:
        raise NotNested("H_L is not contained in H_K.")
    return H_K.order // H_L.order


def torsion_fixed_by(x, H):
    """Abstract test: lambda^B_M is fixed by H iff A*B = B mod M for every generator A."""
    field = H.field
    x = torsion_embed(x, field.M)
    return all(not ((A - 1) * x.B) % field.M for A in H.gens)


def lambda_orbit(field):
    """{C_A(lambda) : A unit}, the conjugates of lambda."""
    return [field.image_of_lambda(A) for A in field.full_group.elements]

