"""Bases of finite abelian groups and the isomorphism test.

Three entry points, one per kind of input:

* :func:`basis_from_table` needs an enumerable group and grows subgroups
  ``G_1 < G_2 < ...`` by adjoining the first element not yet reached,
  costing O(N) group operations in total.
* :func:`basis_from_generators` folds each generator's prime components
  into per-prime bases.
* :func:`basis_cyclic` handles cyclic groups by keeping, for each prime,
  the generator component of largest order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .divisors import DivisorTable, element_order, enumerate_divisors, primary_split
from .edlp import IndependentBasis, solve_edlp
from .errors import NotCyclicOrNotGenerating, NotEnumerable, NotGenerating
from .extend import Relation, extend_basis
from .factorization import Factorization
from .groups import AbelianGroup, Element, enumerate_elements, scalar_mul


@dataclass
class GroupStructure:
    """Per-prime lists of ``(generator, order)``, orders descending.

    ``stats`` carries run bookkeeping: for table runs, ``rounds`` and
    ``subgroup_sizes`` (the sizes |G_j|, whose sum is at most 2N).
    """

    factorization: Factorization
    components: dict[int, list[tuple[Element, int]]]
    stats: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.factorization.n

    def product_of_orders(self) -> int:
        out = 1
        for pairs in self.components.values():
            for _, o in pairs:
                out *= o
        return out

    def generators(self) -> list[Element]:
        return [g for pairs in self.components.values() for g, _ in pairs]

    def basis(self, p: int) -> IndependentBasis:
        return IndependentBasis.from_pairs(p, self.components.get(p, []))

    def profile(self) -> dict[int, tuple[int, int]]:
        """``{p: (rank, exponent)}`` where p**exponent is the largest order."""
        out = {}
        for p, pairs in self.components.items():
            e = 0
            top = max((o for _, o in pairs), default=1)
            while top > 1:
                top //= p
                e += 1
            out[p] = (len(pairs), e)
        return out


@dataclass(frozen=True)
class CanonicalInvariants:
    """Elementary divisors grouped by prime; equal iff the groups are isomorphic."""

    orders: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "CanonicalInvariants":
        """From a multiset of prime-power orders (1s are ignored)."""
        by_prime: dict[int, list[int]] = {}
        for q in orders:
            if q == 1:
                continue
            p = _smallest_prime_factor(q)
            by_prime.setdefault(p, []).append(q)
        return cls(tuple((p, tuple(sorted(v, reverse=True))) for p, v in sorted(by_prime.items())))

    def as_dict(self) -> dict[int, list[int]]:
        return {p: list(v) for p, v in self.orders}

    @property
    def group_order(self) -> int:
        out = 1
        for _, v in self.orders:
            for q in v:
                out *= q
        return out

    def __str__(self) -> str:
        parts = [f"Z{q}" for _, v in self.orders for q in v]
        return " x ".join(parts) if parts else "trivial"


def _smallest_prime_factor(q: int) -> int:
    d = 2
    while d * d <= q:
        if q % d == 0:
            return d
        d += 1
    return q


def canonical_invariants(s: GroupStructure) -> CanonicalInvariants:
    return CanonicalInvariants.from_orders(o for pairs in s.components.values() for _, o in pairs)


def is_isomorphic(a: CanonicalInvariants, b: CanonicalInvariants) -> bool:
    return a.orders == b.orders


def _fold(
    p: int,
    B: IndependentBasis,
    w: Element,
    G: AbelianGroup,
) -> tuple[IndependentBasis, int]:
    """Adjoin ``w`` to ``B``; return the new basis and the index p^k gained."""
    sol = solve_edlp(w, B, G)
    z = sol.z
    if z == 1:
        return B, 1
    k_pow = 1
    s = z
    while s % p == 0:
        s //= p
        k_pow *= p
    # inside a p-group z is itself a power of p
    assert s == 1, f"EDLP multiple {z} has a cofactor prime to {p}"
    h = w if s == 1 else scalar_mul(s, w, G)
    return extend_basis(B, h, Relation(k_pow, sol.coefficients), G), k_pow


def _finish(G: AbelianGroup, bases: dict[int, IndependentBasis], stats: dict) -> GroupStructure:
    comps = {p: bases[p].pairs() for p in G.factorization.primes}
    return GroupStructure(G.factorization, comps, stats)


def basis_from_table(G: AbelianGroup) -> GroupStructure:
    """Basis of an enumerable group by successive enlargement.

    Round j picks the first element ``x_j`` (in enumeration order) outside
    the current subgroup ``G_{j-1}``, splits it into prime components, and
    extends each per-prime basis. The new subgroup is ``G_{j-1} + <x_j>``;
    its new cosets ``G_{j-1} + t*x_j`` are marked one element at a time.
    """
    if not G.enumerable:
        raise NotEnumerable(f"{type(G).__name__} cannot enumerate its elements")
    f = G.factorization
    N = f.n
    D = enumerate_divisors(f)
    bases = {p: IndependentBasis(p) for p in f.primes}

    counter = G.counter
    marked = bytearray(N)
    identity = G.identity
    marked[G.index(identity)] = 1
    members = [identity]
    sizes: list[int] = []
    cursor = enumerate_elements(G)

    while len(members) < N:
        for x in cursor:
            if not marked[G.index(x)]:
                break
        else:
            raise RuntimeError("enumeration ended before the group was covered")

        r = element_order(x, D, G)
        index = 1
        for p, xp, _ in primary_split(x, r, G, D):
            bases[p], gained = _fold(p, bases[p], xp, G)
            index *= gained

        with counter.phase("marking"):
            old = len(members)
            step = identity
            for _ in range(index - 1):
                step = G.add(step, x)
                for g in members[:old]:
                    y = G.add(g, step)
                    i = G.index(y)
                    if marked[i]:
                        raise RuntimeError("coset element already marked; oracle is inconsistent")
                    marked[i] = 1
                    members.append(y)
        sizes.append(len(members))

    stats = {"rounds": len(sizes), "subgroup_sizes": sizes, "sum_sizes": sum(sizes)}
    return _finish(G, bases, stats)


def _split_all(G: AbelianGroup, gens: Sequence[Element], D: DivisorTable):
    return [primary_split(g, element_order(g, D, G), G, D) for g in gens]


def basis_from_generators(G: AbelianGroup, gens: Sequence[Element]) -> GroupStructure:
    """Basis from a generating set.

    Every generator is split into prime components; per prime, the
    components are adjoined one at a time until the basis spans p^a
    elements. Raises :class:`NotGenerating` if the result is smaller than G.
    """
    f = G.factorization
    D = enumerate_divisors(f)
    split = _split_all(G, gens, D)

    bases = {p: IndependentBasis(p) for p in f.primes}
    for p, a in f.factors:
        full = p**a
        size = 1
        for comps in split:
            if size == full:
                break
            for q, xq, _ in comps:
                if q == p:
                    bases[p], gained = _fold(p, bases[p], xq, G)
                    size *= gained
    s = _finish(G, bases, {})
    got = s.product_of_orders()
    if got != f.n:
        raise NotGenerating(f"generators span a subgroup of order {got}, not {f.n}")
    return s


def basis_cyclic(G: AbelianGroup, gens: Sequence[Element]) -> GroupStructure:
    """One generator per prime for a cyclic group: the component of largest
    order among the generators' components. That order must be p^a."""
    f = G.factorization
    D = enumerate_divisors(f)
    split = _split_all(G, gens, D)

    comps = {}
    for p, a in f.factors:
        best = None
        for parts in split:
            for q, xq, o in parts:
                if q == p and (best is None or o > best[1]):
                    best = (xq, o)
        if best is None or best[1] != p**a:
            got = 1 if best is None else best[1]
            raise NotCyclicOrNotGenerating(
                f"largest {p}-component has order {got}, expected {p**a}"
            )
        comps[p] = [best]
    return GroupStructure(f, comps, {})
