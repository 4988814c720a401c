"""The ring R_T = F_q[T] and its fraction field k = F_q(T).

``Poly`` stores coefficient codes of F_q lowest degree first with no trailing
zeros. Over prime fields products use Kronecker substitution: both operands
are packed into one big integer, multiplied by CPython, and unpacked mod p.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

import regex

from .config import load_caps
from .errors import DivByZero, InvariantViolation, ParseError, SpecMismatch, ZeroInput, check_cap

logger = logging.getLogger(__name__)

VAR = "T"
NEG_INF = float("-inf")


class Poly:
    __slots__ = ("spec", "c", "_hash")

    def __init__(self, spec, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.spec = spec
        self.c = tuple(coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, spec, coeffs):
        """Build from an already stripped tuple."""
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.c = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, spec):
        return cls._raw(spec, ())

    @classmethod
    def one(cls, spec):
        return cls._raw(spec, (1,))

    @classmethod
    def const(cls, spec, a):
        return cls._raw(spec, (a,) if a else ())

    @classmethod
    def monomial(cls, spec, k, a=1):
        return cls._raw(spec, (0,) * k + (a,) if a else ())

    @classmethod
    def t(cls, spec):
        return cls.monomial(spec, 1)

    @classmethod
    def from_index(cls, spec, n):
        """Inverse of ``index``: base-q digits of n, lowest first."""
        digits = []
        while n:
            n, r = divmod(n, spec.q)
            digits.append(r)
        return cls._raw(spec, tuple(digits))

    def index(self):
        n = 0
        for a in reversed(self.c):
            n = n * self.spec.q + a
        return n

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def lead(self):
        return self.c[-1] if self.c else 0

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == (1,)

    def is_constant(self):
        return len(self.c) <= 1

    def is_monic(self):
        return self.lead == 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c and self.spec == other.spec
        if isinstance(other, int):
            return self.c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def sort_key(self):
        return (len(self.c), tuple(reversed(self.c)))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec!r} and {other.spec!r} differ.")
            return other
        if isinstance(other, int):
            return Poly.const(self.spec, self.spec.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        if spec.nu == 1:
            p = spec.p
            out = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
        else:
            out = [spec.add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
        return Poly(spec, out)

    __radd__ = __add__

    def __neg__(self):
        spec = self.spec
        return Poly._raw(spec, tuple(spec.neg(x) for x in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a):
        if a == 0:
            return Poly.zero(self.spec)
        if a == 1:
            return self
        spec = self.spec
        return Poly._raw(spec, tuple(spec.mul(a, x) for x in self.c))

    def shift(self, k):
        """Multiply by T^k."""
        if not self.c:
            return self
        return Poly._raw(self.spec, (0,) * k + self.c)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.c, other.c
        if not a or not b:
            return Poly.zero(self.spec)
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        if self.spec.nu == 1:
            return Poly._raw(self.spec, _kronecker_mul(a, b, self.spec.p))
        return Poly(self.spec, _schoolbook_mul(a, b, self.spec))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("Negative powers are not polynomials.")
        result = Poly.one(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow_q(self):
        """Frobenius x -> x^q, which on F_q[T] is the substitution T -> T^q."""
        q = self.spec.q
        if len(self.c) <= 1:
            return self
        out = [0] * ((len(self.c) - 1) * q + 1)
        out[::q] = self.c
        return Poly._raw(self.spec, tuple(out))

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(self.spec.inv(self.c[-1]))

    def evaluate(self, a):
        spec = self.spec
        acc = 0
        for c in reversed(self.c):
            acc = spec.add(spec.mul(acc, a), c)
        return acc

    def divides(self, other):
        if not self.c:
            return not other.c
        return not (other % self).c

    def mulmod(self, other, m):
        return (self * other) % m

    def powmod(self, n, m):
        result = Poly.one(self.spec) % m
        base = self % m
        while n:
            if n & 1:
                result = (result * base) % m
            n >>= 1
            if n:
                base = (base * base) % m
        return result


def _kronecker_mul(a, b, p):
    slot = ((p - 1) ** 2 * min(len(a), len(b))).bit_length()
    width = (slot + 7) // 8
    packed_a = int.from_bytes(b"".join(x.to_bytes(width, "little") for x in a), "little")
    packed_b = int.from_bytes(b"".join(x.to_bytes(width, "little") for x in b), "little")
    n = len(a) + len(b) - 1
    raw = (packed_a * packed_b).to_bytes(n * width, "little")
    out = [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _schoolbook_mul(a, b, spec):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = spec.add(out[i + j], spec.mul(x, y))
    return out


def poly_divrem(a, b):
    if not b.c:
        raise DivByZero("Polynomial division by zero.")
    spec = a.spec
    db = len(b.c) - 1
    if len(a.c) - 1 < db:
        return Poly.zero(spec), a
    r = list(a.c)
    quot = [0] * (len(r) - db)
    bc = b.c
    inv = spec.inv(bc[-1])
    if spec.nu == 1:
        p = spec.p
        for k in range(len(r) - 1 - db, -1, -1):
            coef = r[k + db] * inv % p
            if coef:
                quot[k] = coef
                for j in range(db + 1):
                    r[k + j] = (r[k + j] - coef * bc[j]) % p
    else:
        for k in range(len(r) - 1 - db, -1, -1):
            coef = spec.mul(r[k + db], inv)
            if coef:
                quot[k] = coef
                for j in range(db + 1):
                    r[k + j] = spec.sub(r[k + j], spec.mul(coef, bc[j]))
    return Poly(spec, quot), Poly(spec, r[:db])


def poly_arith(a, b, op):
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec!r} and {b.spec!r} differ.")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return poly_divrem(a, b)
    raise ValueError(f"Unknown ring operation {op!r}.")


def poly_gcd(a, b):
    while b.c:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a, b):
    if not a.c or not b.c:
        return Poly.zero(a.spec)
    return (a * b // poly_gcd(a, b)).monic()


def poly_xgcd(a, b):
    """Return (g, s1, s2) with g = a*s1 + b*s2 and g monic (or all zero)."""
    spec = a.spec
    zero, one = Poly.zero(spec), Poly.one(spec)
    if not a.c and not b.c:
        return zero, zero, zero
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1.c:
        quot, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    inv = spec.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_inverse_mod(a, m):
    g, s, _ = poly_xgcd(a % m, m)
    if not g.is_one():
        raise DivByZero(f"{a} is not invertible modulo {m}.")
    return s % m


class RatFn:
    """Element of k = F_q(T) as num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            self.num = num
            self.den = Poly.one(num.spec)
            return
        if not den.c:
            raise DivByZero("Rational function with zero denominator.")
        if not _normalized:
            if den.c == (1,):
                pass
            elif not num.c:
                den = Poly.one(num.spec)
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = num // g, den // g
                lead = den.lead
                if lead != 1:
                    inv = num.spec.inv(lead)
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def from_int(cls, spec, n):
        return cls(Poly.const(spec, spec.from_int(n)))

    @property
    def spec(self):
        return self.num.spec

    def is_zero(self):
        return not self.num.c

    def is_one(self):
        return self.num.c == (1,) and self.den.c == (1,)

    def is_poly(self):
        return self.den.c == (1,)

    def __bool__(self):
        return bool(self.num.c)

    def __eq__(self, other):
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, Poly):
            return RatFn(other)
        if isinstance(other, int):
            return RatFn.from_int(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.c == (1,) and other.den.c == (1,):
            return RatFn(self.num + other.num)
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den.c == (1,) and other.den.c == (1,):
            return RatFn(self.num * other.num)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.c:
            raise DivByZero("Inverse of zero in F_q(T).")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFn(self.num**n, self.den**n, _normalized=True)

    def pow_q(self):
        return RatFn(self.num.pow_q(), self.den.pow_q(), _normalized=True)

    def scale(self, a):
        return RatFn(self.num.scale(a), self.den, _normalized=True) if a else RatFn(Poly.zero(self.spec))

    def __repr__(self):
        return f"RatFn({self})"

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


@dataclass(frozen=True)
class Factorization:
    factors: tuple
    unit: int
    spec: object

    def recompose(self):
        out = Poly.const(self.spec, self.unit)
        for prime, e in self.factors:
            out = out * prime**e
        return out

    def primes(self):
        return [prime for prime, _ in self.factors]

    def to_json(self):
        return {
            "unit": self.spec.format(self.unit),
            "factors": [[format_poly(prime), e] for prime, e in self.factors],
        }


def monic_polys(spec, d):
    """All monic polynomials of degree d, in canonical order."""
    for tail in itertools.product(range(spec.q), repeat=d):
        yield Poly._raw(spec, tuple(reversed(tail)) + (1,))


def residues(spec, d):
    """All polynomials of degree < d, ordered by ``Poly.index``."""
    for n in range(spec.q**d):
        yield Poly.from_index(spec, n)


@lru_cache(maxsize=None)
def irreducibles(spec, d):
    """Monic irreducibles of degree d, built by sieving against lower degrees."""
    check_cap(f"irreducible table of degree {d}", d, load_caps(), "factor_degree")
    lower = [prime for k in range(1, d // 2 + 1) for prime in irreducibles(spec, k)]
    table = [f for f in monic_polys(spec, d) if not any(prime.divides(f) for prime in lower)]
    logger.debug("irreducible table q=%d degree=%d: %d polynomials", spec.q, d, len(table))
    return tuple(table)


def is_irreducible(m):
    if m.degree < 1:
        return False
    m = m.monic()
    return all(
        not prime.divides(m)
        for k in range(1, m.degree // 2 + 1)
        for prime in irreducibles(m.spec, k)
    )


def poly_factor(m):
    if not m.c:
        raise ZeroInput("Cannot factor the zero polynomial.")
    check_cap(f"factorization of degree {m.degree}", m.degree, load_caps(), "factor_degree")
    return _factor_cached(m)


@lru_cache(maxsize=4096)
def _factor_cached(m):
    spec = m.spec
    unit = m.lead
    rest = m.monic()
    factors = []
    d = 1
    while 2 * d <= rest.degree:
        for prime in irreducibles(spec, d):
            e = 0
            while True:
                quot, rem = poly_divrem(rest, prime)
                if rem.c:
                    break
                rest, e = quot, e + 1
            if e:
                factors.append((prime, e))
            if 2 * d > rest.degree:
                break
        d += 1
    if rest.degree >= 1:
        factors.append((rest, 1))
    factors.sort(key=lambda item: item[0].sort_key())
    return Factorization(tuple(factors), unit, spec)


def phi(m):
    if not m.c:
        raise ZeroInput("Phi(0) is undefined.")
    if m.degree == 0:
        return 1
    q = m.spec.q
    total = 1
    for prime, e in poly_factor(m).factors:
        d = prime.degree
        total *= q ** (d * e) - q ** (d * (e - 1))
    return total


def poly_mobius(m):
    if m.degree == 0:
        return 1
    factors = poly_factor(m).factors
    if any(e >= 2 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def monic_divisors(m):
    """Monic divisors of m in canonical order."""
    factors = poly_factor(m).factors
    spec = m.spec
    out = []
    for exps in itertools.product(*(range(e + 1) for _, e in factors)):
        d = Poly.one(spec)
        for (prime, _), k in zip(factors, exps):
            d = d * prime**k
        out.append(d)
    return sorted(out, key=Poly.sort_key)


def is_unit_mod(b, primes):
    return all((b % prime).c for prime in primes)


def unit_residues(m):
    if m.degree < 1:
        raise ZeroInput("unit_residues needs a nonconstant modulus.")
    size = phi(m)
    check_cap(f"(R_T/({m}))^*", size, load_caps(), "residues")
    primes = poly_factor(m).primes()
    out = [b for b in residues(m.spec, m.degree) if b.c and is_unit_mod(b, primes)]
    if len(out) != size:
        raise InvariantViolation(f"found {len(out)} units modulo {m}, expected {size}")
    return out


# -- text grammar ---------------------------------------------------------

_TERM = regex.compile(
    r"""
    \s*(?P<sign>[+-])?\s*
    (?:
        (?P<coef>\d+\s*\*\s*w(?:\s*\^\s*\d+)?|\d+|\([^()]*\)|w(?:\s*\^\s*\d+)?)
        \s*(?P<star>\*)?\s*
    )?
    (?P<var>[A-Za-z](?:\s*\^\s*(?P<exp>\d+))?)?
    \s*
    """,
    regex.VERBOSE,
)
_W_TERM = regex.compile(r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+)?\s*(?P<star>\*)?\s*(?P<w>w(?:\s*\^\s*(?P<exp>\d+))?)?\s*")


def _check_digit(text, spec, source):
    value = int(text)
    if value >= spec.p:
        raise ParseError(f"Coefficient {value} in {source!r} is not in 0..{spec.p - 1}.")
    return value


def parse_field_element(text, spec):
    """Parse an F_q element: an integer, or a polynomial in w when nu > 1."""
    source = text
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text.strip():
        raise ParseError(f"Empty field element in {source!r}.")
    w_code = spec.p if spec.nu > 1 else None
    acc = 0
    pos = 0
    first = True
    while pos < len(text):
        match = _W_TERM.match(text, pos)
        if match is None or match.end() == pos or not (match["coef"] or match["w"]):
            raise ParseError(f"Cannot parse field element {source!r} at offset {pos}.")
        if not first and not match["sign"]:
            raise ParseError(f"Missing '+' or '-' in {source!r}.")
        if match["star"] and not (match["coef"] and match["w"]):
            raise ParseError(f"Dangling '*' in {source!r}.")
        if match["w"] and w_code is None:
            raise ParseError(f"'w' is only meaningful when q is not prime: {source!r}.")
        value = spec.from_int(_check_digit(match["coef"], spec, source)) if match["coef"] else 1
        if match["w"]:
            value = spec.mul(value, spec.power(w_code, int(match["exp"] or 1)))
        if match["sign"] == "-":
            value = spec.neg(value)
        acc = spec.add(acc, value)
        pos = match.end()
        first = False
    return acc


def parse_poly(text, spec, var=VAR):
    """Parse the polynomial text grammar, e.g. ``T^2+2*T+1`` or ``(w+1)*T+w``."""
    source = text
    if not isinstance(text, str) or not text.strip():
        raise ParseError("Empty polynomial.")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None or match.end() == pos or not (match["coef"] or match["var"]):
            raise ParseError(f"Cannot parse polynomial {source!r} at offset {pos}.")
        if not first and not match["sign"]:
            raise ParseError(f"Missing '+' or '-' in {source!r} at offset {pos}.")
        if match["var"] and not match["var"].startswith(var):
            raise ParseError(f"Unknown variable in {source!r}; expected {var!r}.")
        if match["star"] and not (match["coef"] and match["var"]):
            raise ParseError(f"Dangling '*' in {source!r}.")
        coef_text = match["coef"]
        if coef_text is None:
            value = 1
        elif coef_text.isdigit():
            value = spec.from_int(_check_digit(coef_text, spec, source))
        else:
            value = parse_field_element(coef_text, spec)
        if match["sign"] == "-":
            value = spec.neg(value)
        k = (int(match["exp"]) if match["exp"] else 1) if match["var"] else 0
        coeffs[k] = spec.add(coeffs.get(k, 0), value)
        pos = match.end()
        first = False
    out = [0] * (max(coeffs) + 1)
    for k, value in coeffs.items():
        out[k] = value
    return Poly(spec, out)


def format_poly(f, var=VAR):
    """Canonical text: descending powers, no zero terms, ``0`` for zero."""
    if not f.c:
        return "0"
    spec = f.spec
    terms = []
    for k in range(len(f.c) - 1, -1, -1):
        a = f.c[k]
        if a == 0:
            continue
        coef = spec.format(a)
        if k == 0:
            terms.append(coef)
            continue
        power = var if k == 1 else f"{var}^{k}"
        if a == 1:
            terms.append(power)
        elif "+" in coef:
            terms.append(f"({coef})*{power}")
        else:
            terms.append(f"{coef}*{power}")
    return "+".join(terms)
