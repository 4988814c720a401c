"""Finite groups as an element list plus a Cayley table on indices.

Methods ending in ``_idx`` work on indices into ``elements``; the others take
and return elements. Galois groups here are unit groups (R_T/(M))^*, so the
lattice and quotient code assumes commutativity where noted.
"""

import logging
from collections import deque
from functools import cached_property

import sympy

from .config import load_caps
from .errors import InvariantViolation, NotNested, check_cap

logger = logging.getLogger(__name__)


def closure(gens, mul, identity):
    """Subgroup generated by ``gens`` inside a finite group, as a list in BFS order."""
    seen = {identity}
    out = [identity]
    queue = deque([identity])
    gens = [g for g in gens if g != identity]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


class FiniteGroup:
    def __init__(self, elements, table, name="group"):
        self.elements = list(elements)
        self.table = table
        self.name = name
        self._index = {e: i for i, e in enumerate(self.elements)}

    @classmethod
    def from_operation(cls, elements, op, name="group", cap_key="group_order"):
        elements = list(elements)
        check_cap(f"Cayley table of {name}", len(elements), load_caps(), cap_key)
        index = {e: i for i, e in enumerate(elements)}
        table = [[index[op(a, b)] for b in elements] for a in elements]
        return cls(elements, table, name)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={len(self)})"

    def idx(self, elem):
        return self._index[elem]

    def mul_idx(self, a, b):
        return self.table[a][b]

    def mul(self, a, b):
        return self.elements[self.table[self._index[a]][self._index[b]]]

    @cached_property
    def identity_idx(self):
        for a in range(len(self)):
            if all(self.table[a][b] == b for b in range(len(self))):
                return a
        raise InvariantViolation(f"{self.name} has no identity")

    @cached_property
    def inverse_idx(self):
        e = self.identity_idx
        out = [None] * len(self)
        for a in range(len(self)):
            row = self.table[a]
            out[a] = row.index(e)
        return out

    def power_idx(self, a, n):
        result = self.identity_idx
        for _ in range(n % self.order_idx(a)):
            result = self.table[result][a]
        return result

    def order_idx(self, a):
        e = self.identity_idx
        x, n = a, 1
        while x != e:
            x = self.table[x][a]
            n += 1
        return n

    def is_abelian(self):
        n = len(self)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def closure_idx(self, gens):
        return frozenset(closure(gens, self.mul_idx, self.identity_idx))

    def cyclic_subgroups(self):
        seen = {}
        for a in range(len(self)):
            sub = self.closure_idx([a])
            seen.setdefault(sub, a)
        return seen

    def subgroup_lattice(self, cap_key="lattice_order"):
        """Every subgroup exactly once, each as a frozenset of indices.

        A subgroup is reached from a smaller one by adjoining a single cyclic
        subgroup, so a breadth-first join over the cyclic subgroups finds all
        of them.
        """
        check_cap(f"subgroup lattice of {self.name}", len(self), load_caps(), cap_key)
        cyclic = self.cyclic_subgroups()
        trivial = frozenset([self.identity_idx])
        found = {trivial: ()}
        frontier = [trivial]
        while frontier:
            nxt = []
            for sub in frontier:
                for cyc, g in cyclic.items():
                    if cyc <= sub:
                        continue
                    joined = self.closure_idx(list(found[sub]) + [g])
                    if joined not in found:
                        found[joined] = found[sub] + (g,)
                        nxt.append(joined)
            frontier = nxt
        logger.debug("%s: %d subgroups", self.name, len(found))
        return sorted(found, key=lambda sub: (len(sub), sorted(sub)))

    def generators_idx(self, sub=None):
        """A small generating set of ``sub`` (default: the whole group), greedily by order."""
        sub = frozenset(range(len(self))) if sub is None else frozenset(sub)
        gens = []
        current = frozenset([self.identity_idx])
        for a in sorted(sub, key=lambda a: (-self.order_idx(a), a)):
            if a not in current:
                gens.append(a)
                current = self.closure_idx(gens)
            if current == sub:
                break
        return gens

    def quotient(self, sub):
        """Cosets of the normal subgroup ``sub`` as a new group, plus the projection."""
        sub = frozenset(sub)
        if self.identity_idx not in sub:
            raise NotNested("quotient by a set that is not a subgroup")
        coset_of = [None] * len(self)
        reps = []
        for a in range(len(self)):
            if coset_of[a] is not None:
                continue
            label = len(reps)
            reps.append(a)
            for h in sub:
                coset_of[self.table[a][h]] = label
        table = [[coset_of[self.table[a][b]] for b in reps] for a in reps]
        quotient = FiniteGroup(reps, table, name=f"{self.name}/sub{len(sub)}")
        return quotient, coset_of

    def abelian_invariants(self):
        """Invariant factors d_1 | d_2 | ... of an abelian group, read off p-power torsion counts."""
        if not self.is_abelian():
            raise InvariantViolation(f"{self.name} is not abelian")
        orders = [self.order_idx(a) for a in range(len(self))]
        return invariant_factors_from_orders(orders)


def invariant_factors_from_orders(orders):
    """Invariant factors of a finite abelian group given the orders of all its elements.

    For each prime p, the number of solutions of x^{p^k} = 1 is
    p^{sum_i min(k, e_i)}, which pins the exponents e_i of the p-part.
    """
    n = len(orders)
    primary = {}
    for p, top in sympy.factorint(n).items():
        counts = [sum(1 for o in orders if (p**k) % o == 0) for k in range(top + 1)]
        ranks = []
        for k in range(1, top + 1):
            ratio = counts[k] // counts[k - 1]
            ranks.append(sympy.multiplicity(p, ratio) if ratio > 1 else 0)
        exps = []
        for k in range(len(ranks)):
            at_least_k = ranks[k]
            at_least_next = ranks[k + 1] if k + 1 < len(ranks) else 0
            exps.extend([k + 1] * (at_least_k - at_least_next))
        primary[p] = sorted(exps, reverse=True)
    width = max((len(e) for e in primary.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in primary.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)


def abelian_group(invariants):
    """The group Z/d_1 x ... x Z/d_k with tuple elements."""
    elements = [()]
    for d in invariants:
        elements = [e + (k,) for e in elements for k in range(d)]

    def op(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, invariants))

    return FiniteGroup.from_operation(elements, op, name=f"Z{'xZ'.join(map(str, invariants)) or '1'}")
