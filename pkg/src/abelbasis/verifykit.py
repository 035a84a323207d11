"""Brute-force reference computations.

These only use the oracle's ``add``/``identity``/equality and enumeration,
never the structure code, so they serve as independent checks. They are
quadratic or worse and refuse inputs above ``bound``.
"""

from __future__ import annotations

import itertools
from math import prod
from typing import Sequence

from sympy import factorint
from sympy.utilities.iterables import partitions

from .edlp import EdlpSolution, IndependentBasis
from .errors import TooLarge
from .groups import AbelianGroup, Element, enumerate_elements
from .opcount import OpReport
from .structure import CanonicalInvariants

__all__ = [
    "OpReport",
    "abelian_groups_of_order",
    "brute_force_edlp",
    "brute_force_order",
    "brute_force_structure",
    "check_direct_sum",
    "closure",
    "random_generating_set",
    "span",
]

DEFAULT_BOUND = 4096


def brute_force_order(x: Element, G: AbelianGroup, limit: int | None = None) -> int:
    """Least t >= 1 with t*x == 0, by repeated addition."""
    limit = G.order if limit is None else limit
    acc = x
    t = 1
    while acc != G.identity:
        acc = G._add(acc, x)
        t += 1
        if t > limit:
            raise RuntimeError(f"{x!r} has no order <= {limit}")
    return t


def brute_force_structure(G: AbelianGroup, bound: int = DEFAULT_BOUND) -> CanonicalInvariants:
    """Elementary divisors from element-order counts.

    In ``Z_{p^e_1} + ... + Z_{p^e_m}`` the number of elements killed by
    ``p^t`` is ``p^(sum_j min(t, e_j))``, so consecutive ratios of these
    counts give how many ``e_j`` are at least ``t``.
    """
    if G.order > bound:
        raise TooLarge(f"group of order {G.order} exceeds bound {bound}")
    orders = [brute_force_order(x, G) for x in enumerate_elements(G)]
    if len(orders) != G.order:
        raise RuntimeError(f"enumeration gave {len(orders)} elements, expected {G.order}")

    result = []
    for p, a in G.factorization.factors:
        counts = []
        for t in range(a + 1):
            q = p**t
            counts.append(sum(1 for o in orders if q % o == 0))
        at_least = []
        for t in range(1, a + 1):
            ratio, rem = divmod(counts[t], counts[t - 1])
            r = _log(p, ratio)
            if rem or r is None:
                raise RuntimeError(f"inconsistent {p}-torsion counts {counts}")
            at_least.append(r)
        # at_least[t-1] = #{j : e_j >= t}
        for t in range(a, 0, -1):
            exactly = at_least[t - 1] - (at_least[t] if t < a else 0)
            result.extend([p**t] * exactly)
    return CanonicalInvariants.from_orders(result)


def _log(p: int, n: int) -> int | None:
    e = 0
    while n > 1:
        if n % p:
            return None
        n //= p
        e += 1
    return e if n == 1 else None


def span(elements: Sequence[Element], orders: Sequence[int], G: AbelianGroup) -> dict:
    """Map ``sum(c_j * b_j) -> c`` over the whole coefficient box; the first
    vector (lexicographically) reaching an element wins."""
    multiples = []
    for b, o in zip(elements, orders):
        row = [G.identity]
        for _ in range(o - 1):
            row.append(G._add(row[-1], b))
        multiples.append(row)
    out: dict = {}
    for coeffs in itertools.product(*(range(o) for o in orders)):
        acc = G.identity
        for row, c in zip(multiples, coeffs):
            acc = G._add(acc, row[c])
        out.setdefault(acc, coeffs)
    return out


def brute_force_edlp(
    w: Element, B: IndependentBasis, G: AbelianGroup, bound: int = DEFAULT_BOUND
) -> EdlpSolution:
    """Least z with z*w in <B>, scanning z = 1, 2, ... against the full span."""
    if B.size > bound:
        raise TooLarge(f"span of size {B.size} exceeds bound")
    table = span(B.elements, B.orders, G)
    acc = w
    z = 1
    while acc not in table:
        acc = G._add(acc, w)
        z += 1
        if z > G.order:
            raise RuntimeError("no multiple of w lies in the span")
    return EdlpSolution(z, tuple(table[acc]))


def check_direct_sum(elements: Sequence[Element], G: AbelianGroup, bound: int = DEFAULT_BOUND) -> bool:
    """True iff the elements (with their true orders) give distinct sums for
    every coefficient vector, i.e. they generate a direct sum."""
    if isinstance(elements, IndependentBasis):
        elements = elements.elements
    orders = [brute_force_order(b, G) for b in elements]
    if prod(orders) > bound:
        raise TooLarge(f"coefficient box of size {prod(orders)} exceeds bound {bound}")
    return len(span(elements, orders, G)) == prod(orders)


def abelian_groups_of_order(n: int) -> list[list[int]]:
    """Every abelian group of order n as a sorted list of prime-power orders."""
    per_prime = []
    for p, a in sorted(factorint(n).items()):
        options = []
        for part in partitions(a):
            options.append([p**e for e, mult in sorted(part.items(), reverse=True) for _ in range(mult)])
        per_prime.append(options)
    return [sum(choice, []) for choice in itertools.product(*per_prime)]


def random_generating_set(G: AbelianGroup, size: int, rng, tries: int = 10_000) -> list[Element]:
    """Uniform random ``size``-subsets of an enumerable group, resampled until
    they generate G (checked by closure)."""
    elems = list(enumerate_elements(G))
    for _ in range(tries):
        gens = [elems[rng.randrange(len(elems))] for _ in range(size)]
        if len(closure(gens, G)) == G.order:
            return gens
    raise RuntimeError(f"no generating set of size {size} found")


def closure(gens: Sequence[Element], G: AbelianGroup) -> set:
    """Subgroup generated by ``gens`` by breadth-first search."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G._add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen
