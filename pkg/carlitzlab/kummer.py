"""Carlitz-Kummer extensions K(alpha), alpha^M = z.

Solvability of C_M(u) = z over R_T is decided by linear algebra over F_q,
since C_M is F_q-linear and the degree of C_M(u) is forced by deg u.
"""

import itertools
import logging
from dataclasses import dataclass

from .carlitz import carlitz_apply, carlitz_coeffs, torsion_act, torsion_add, torsion_embed, torsion_order
from .config import load_caps
from .cycfield import CycField
from .errors import (
    DegreeNotOne,
    HypothesisNotMet,
    InvariantViolation,
    ModulusMismatch,
    NotCoprime,
    WrongOrders,
    ZeroInput,
    check_cap,
)
from .groups import FiniteGroup
from .polyring import (
    Poly,
    RatFn,
    format_poly,
    is_irreducible,
    monic_divisors,
    phi,
    poly_gcd,
    poly_lcm,
    poly_xgcd,
    residues,
    unit_residues,
)

logger = logging.getLogger(__name__)


def _solve_fq(columns, target, spec):
    """Solve sum x_j columns[j] = target over F_q; vectors are coefficient lists."""
    rows = max([len(c) for c in columns] + [len(target)])
    n = len(columns)
    matrix = [
        [columns[j][i] if i < len(columns[j]) else 0 for j in range(n)] + [target[i] if i < len(target) else 0]
        for i in range(rows)
    ]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, rows) if matrix[i][col]), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = spec.inv(matrix[r][col])
        matrix[r] = [spec.mul(inv, a) for a in matrix[r]]
        for i in range(rows):
            if i != r and matrix[i][col]:
                factor = matrix[i][col]
                matrix[i] = [spec.sub(a, spec.mul(factor, b)) for a, b in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
    if any(matrix[i][n] for i in range(r, rows)):
        return None
    solution = [0] * n
    for i, col in enumerate(pivots):
        solution[col] = matrix[i][n]
    return solution


def carlitz_preimage(M, z):
    """u in R_T with C_M(u) = z, or None.

    For deg u >= 1 the leading term of C_M(u) is u^{q^{deg M}}, so a solution
    has deg u <= max(1, deg z // q^{deg M}); the bound 1 covers the one
    case (q = 2, deg u = 1) where the top terms can cancel.
    """
    spec = M.spec
    if M.degree < 1 or not M.is_monic():
        raise ZeroInput(f"carlitz_preimage needs a monic nonconstant M, got {format_poly(M)}.")
    if z.is_zero():
        return Poly.zero(spec)
    bound = max(1, int(z.degree) // spec.q ** M.degree)
    check_cap("Carlitz preimage unknowns", bound + 1, load_caps(), "preimage_degree")
    images = [carlitz_apply(M, Poly.monomial(spec, j)) for j in range(bound + 1)]
    solution = _solve_fq([list(v.c) for v in images], list(z.c), spec)
    if solution is None:
        return None
    u = Poly(spec, solution)
    if carlitz_apply(M, u) != z:
        raise InvariantViolation(f"preimage {format_poly(u)} does not map to {format_poly(z)}")
    return u


def preimage_scan(M, z):
    """Exhaustive search over the forced degree bound; small cases only."""
    spec = M.spec
    if z.is_zero():
        return Poly.zero(spec)
    bound = max(1, int(z.degree) // spec.q ** M.degree)
    for u in residues(spec, bound + 1):
        if carlitz_apply(M, u) == z:
            return u
    return None


# -- roots over k(lambda_P) for deg P = 1 --------------------------------------


def _lambda_substitution(P):
    """T = -lambda^{q-1} - c as a polynomial in lambda, for P = T + c."""
    spec = P.spec
    c = P.c[0] if P.c else 0
    return Poly.monomial(spec, spec.q - 1, spec.neg(1)) + Poly.const(spec, spec.neg(c))


def _compose(f, g):
    """f(g) for polynomials over F_q."""
    out = Poly.zero(f.spec)
    for a in reversed(f.c):
        out = out * g + Poly.const(f.spec, a)
    return out


def _to_lambda(x, sub):
    """A CycElem of k(lambda_P) as a rational function of lambda."""
    spec = sub.spec
    num = Poly.zero(spec)
    lam_power = Poly.one(spec)
    for a in x.nums:
        num = num + _compose(a, sub) * lam_power
        lam_power = lam_power.shift(1)
    return RatFn(num, _compose(x.den, sub))


def _from_lambda(r, field):
    """A rational function of lambda as an element of k(lambda_P)."""

    def evaluate(f):
        acc = field.zero()
        for a in reversed(f.c):
            acc = acc * field.lam + field.scalar(Poly.const(field.spec, a))
        return acc

    return evaluate(r.num) / evaluate(r.den)


def _eval_ratfn_poly(coeffs, r):
    acc = RatFn(Poly.zero(r.spec))
    for a in reversed(coeffs):
        acc = acc * r + a
    return acc


def rational_root_in_cyclotomic(F, P):
    """All roots in K = k(lambda_P) of F = sum F[i] X^i with F[i] in K.

    K is rational in lambda when deg P = 1, so the rational-root test over
    the UFD F_q[lambda] finds every root.
    """
    if P.degree != 1:
        raise DegreeNotOne(f"k(lambda_P) is only handled for deg P = 1, got {format_poly(P)}.")
    spec = P.spec
    field = CycField(P.monic())
    coeffs = [x if not isinstance(x, (Poly, RatFn, int)) else field.element([x]) for x in F]
    sub = _lambda_substitution(P.monic())
    rats = [_to_lambda(x, sub) for x in coeffs]
    while rats and rats[-1].is_zero():
        rats.pop()
    if len(rats) <= 1:
        return []
    common = Poly.one(spec)
    for r in rats:
        common = poly_lcm(common, r.den)
    polys = [r.num * (common // r.den) for r in rats]
    content = Poly.zero(spec)
    for f in polys:
        content = poly_gcd(content, f)
    polys = [f // content for f in polys]

    roots = []
    if polys[0].is_zero():
        roots.append(RatFn(Poly.zero(spec)))
        while polys and polys[0].is_zero():
            polys = polys[1:]
    if len(polys) > 1:
        units = range(1, spec.q)
        for a, b in itertools.product(monic_divisors(polys[0]), monic_divisors(polys[-1])):
            for u in units:
                candidate = RatFn(a.scale(u), b)
                if candidate in roots:
                    continue
                if _eval_ratfn_poly([RatFn(f) for f in polys], candidate).is_zero():
                    roots.append(candidate)
    out = []
    for r in roots:
        root = _from_lambda(r, field)
        value = field.zero()
        for x in reversed(coeffs):
            value = value * root + x
        if value:
            raise InvariantViolation("a rational root does not annihilate F in k(lambda_P)")
        out.append(root)
    logger.debug("rational root scan over k(lambda_%s): %d roots", format_poly(P), len(out))
    return out


def kummer_polynomial(P, z):
    """Coefficients of X^P - z = C_P(X) - z over k(lambda_P), lowest X-degree first."""
    field = CycField(P.monic())
    q = P.spec.q
    terms = {q**i: c for i, c in enumerate(carlitz_coeffs(P).coeffs)}
    top = max(terms)
    coeffs = [field.zero()] * (top + 1)
    for k, c in terms.items():
        coeffs[k] = field.scalar(c)
    coeffs[0] = coeffs[0] - field.scalar(z)
    return coeffs


def kummer_splitting_degree(P, z):
    """[splitting field of X^P - z : k(lambda_P)] = q^{deg P} when z has no preimage."""
    if not P.is_monic() or not is_irreducible(P):
        raise HypothesisNotMet(f"{format_poly(P)} is not monic irreducible.")
    u = carlitz_preimage(P, z)
    if u is not None:
        raise HypothesisNotMet(f"C_P({format_poly(u)}) = {format_poly(z)}; z is a Carlitz P-th power in R_T.")
    if P.degree == 1 and rational_root_in_cyclotomic(kummer_polynomial(P, z), P):
        raise HypothesisNotMet(f"X^P - {format_poly(z)} has a root in k(lambda_P).")
    return P.spec.q ** P.degree


def purity_obstruction_check(p, max_degree=4):
    """Degree obstructions that place mu(L) = Lambda_T for [L:k] = p(p - 1).

    Phi(N) = p^{deg N} - 1 > p(p - 1) rules out every irreducible N of degree
    at least 2, and Phi(T^n) = p^{n-1}(p - 1) divides p(p - 1) only for n <= 2.
    """
    extension = p * (p - 1)
    irreducible = {d: p**d - 1 > extension for d in range(2, max_degree + 1)}
    powers = {n: degree_obstruction(p, n) for n in range(1, max_degree + 1)}
    return {
        "irreducible_excluded": irreducible,
        "t_power_fits": powers,
        "passed": all(irreducible.values()) and all(fits == (n <= 2) for n, fits in powers.items()),
    }


def degree_obstruction(p, n):
    """True iff Phi(T^n) = p^{n-1}(p - 1) can divide [L:k] = p(p - 1)."""
    return (p * (p - 1)) % (p ** (n - 1) * (p - 1)) == 0


# -- the theta representation --------------------------------------------------


@dataclass(frozen=True)
class MatrixRep:
    """The matrix (1 0; B A) over R_T/(N), A a unit."""

    N: Poly
    B: Poly
    A: Poly

    def __post_init__(self):
        object.__setattr__(self, "B", self.B % self.N)
        object.__setattr__(self, "A", self.A % self.N)
        if not poly_gcd(self.A, self.N).is_one():
            raise NotCoprime(f"{format_poly(self.A)} is not a unit modulo {format_poly(self.N)}.")

    @classmethod
    def identity(cls, N):
        return cls(N, Poly.zero(N.spec), Poly.one(N.spec))

    def __repr__(self):
        return f"MatrixRep(N={format_poly(self.N)}, B={format_poly(self.B)}, A={format_poly(self.A)})"


def theta_compose(x, y):
    """(B, A).(B', A') = (B + B'A, AA')."""
    if x.N != y.N:
        raise ModulusMismatch(f"{format_poly(x.N)} and {format_poly(y.N)} differ.")
    return MatrixRep(x.N, x.B + y.B * x.A, x.A * y.A)


def theta_apply(x, C):
    """Action on alpha + lambda^C_N: C -> B + A C."""
    return (x.B + x.A * C) % x.N


def theta_group_order(N):
    return N.spec.q ** N.degree * phi(N)


def theta_group(N):
    order = theta_group_order(N)
    check_cap(f"G({format_poly(N)})", order, load_caps(), "group_order")
    elements = [MatrixRep(N, B, A) for A in unit_residues(N) for B in residues(N.spec, N.degree)]
    return FiniteGroup.from_operation(elements, theta_compose, name=f"G({format_poly(N)})")


def theta_is_abelian(N):
    return theta_group(N).is_abelian()


# -- primitive elements ----------------------------------------------------------


def primitive_element_check(M, N, alpha, beta):
    """alpha + beta generates Lambda_{MN}, with alpha and beta recovered through Bezout."""
    g, s1, s2 = poly_xgcd(M, N)
    if not g.is_one():
        raise NotCoprime(f"gcd({format_poly(M)}, {format_poly(N)}) = {format_poly(g)}.")
    MN = (M * N).monic()
    alpha = torsion_embed(alpha, MN)
    beta = torsion_embed(beta, MN)
    if torsion_order(alpha) != M.monic() or torsion_order(beta) != N.monic():
        raise WrongOrders(f"orders are {format_poly(torsion_order(alpha))} and {format_poly(torsion_order(beta))}.")
    total = torsion_add(alpha, beta)
    if not torsion_act(MN, total).is_zero():
        raise InvariantViolation("alpha + beta is not MN-torsion")
    if torsion_act(N * s2, total) != alpha or torsion_act(M * s1, total) != beta:
        raise InvariantViolation("Bezout recovery of alpha and beta failed")
    return poly_gcd(total.B, MN).is_one()
