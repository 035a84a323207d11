"""Extended discrete logarithms inside a p-group.

Given generators ``b_1..b_n`` of a direct sum ``H = <b_1> + ... + <b_n>`` in
a p-group and an element ``w``, :func:`solve_edlp` finds the least ``z >= 1``
with ``z*w`` in ``H`` together with the coefficients of ``z*w`` on the
``b_j``.

Membership is decided by :func:`subgroup_dlp`, a meet-in-the-middle search
over the coefficient box. Each coefficient ``c_j`` in ``[0, ord(b_j))`` is
written ``lo_j + S_j*hi_j``; the ``S_j`` are chosen so that the baby box
(all ``lo``) and the giant box (all ``hi``) both have about ``sqrt(|H|)``
points. For ``n`` generators of order ``p`` this costs roughly
``2*ceil(sqrt(p))^n`` group operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, prod
from typing import Sequence

from .errors import NotInSubgroup
from .groups import AbelianGroup, Element, scalar_mul


def _is_power_of(p: int, n: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class IndependentBasis:
    """Elements of a p-group whose span is the direct sum of their cyclic
    subgroups. ``orders[j]`` is the exact order of ``elements[j]``, a power
    of ``p`` greater than 1."""

    p: int
    elements: tuple = ()
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))
        if len(self.elements) != len(self.orders):
            raise ValueError("elements and orders differ in length")
        for o in self.orders:
            if o < self.p or not _is_power_of(self.p, o):
                raise ValueError(f"order {o} is not a nontrivial power of {self.p}")

    @classmethod
    def from_pairs(cls, p: int, pairs: Sequence[tuple[Element, int]]) -> "IndependentBasis":
        return cls(p, tuple(e for e, _ in pairs), tuple(o for _, o in pairs))

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def exponents(self) -> tuple[int, ...]:
        out = []
        for o in self.orders:
            e = 0
            while o > 1:
                o //= self.p
                e += 1
            out.append(e)
        return tuple(out)

    def pairs(self) -> list[tuple[Element, int]]:
        return list(zip(self.elements, self.orders))

    def __len__(self):
        return self.n


@dataclass(frozen=True)
class EdlpSolution:
    z: int
    coefficients: tuple[int, ...]


def combine(coefficients: Sequence[int], B: IndependentBasis, G: AbelianGroup) -> Element:
    """``sum(c_j * b_j)`` through the oracle."""
    acc = G.identity
    for c, b, o in zip(coefficients, B.elements, B.orders):
        c %= o
        if c:
            acc = G.add(acc, scalar_mul(c, b, G))
    return acc


def _box_split(orders: Sequence[int]) -> list[int]:
    """Baby-step widths ``S_j`` with ``prod(S_j)`` near ``sqrt(prod(orders))``."""
    size = prod(orders)
    target = isqrt(size)
    if target * target < size:
        target += 1
    widths = []
    rem = target
    for o in orders:
        s = min(o, rem)
        widths.append(s)
        rem = -(-rem // s)
    return widths


def subgroup_dlp(target: Element, B: IndependentBasis, G: AbelianGroup) -> tuple[int, ...]:
    """Coefficients ``c`` with ``sum(c_j*b_j) == target``, ``0 <= c_j < ord(b_j)``.

    Raises :class:`NotInSubgroup` if ``target`` is outside ``<B>``.
    """
    if B.n == 0:
        if G.is_identity(target):
            return ()
        raise NotInSubgroup("only the identity lies in the empty span")

    counter = G.counter
    orders = B.orders
    widths = _box_split(orders)
    spans = [-(-o // s) for o, s in zip(orders, widths)]

    # baby box: every sum(lo_j * b_j), built one generator at a time
    level: list[tuple[Element, tuple[int, ...]]] = [(G.identity, ())]
    for b, s in zip(B.elements, widths):
        nxt = []
        for elem, lo in level:
            cur = elem
            for u in range(s):
                nxt.append((cur, lo + (u,)))
                if u < s - 1:
                    cur = G.add(cur, b)
        level = nxt
    baby: dict[Element, tuple[int, ...]] = {}
    for elem, lo in level:
        counter.tick("hash_insert")
        baby.setdefault(elem, lo)

    # giant box: target - sum(hi_j * S_j * b_j), walked depth-first
    steps = [
        G.negate(scalar_mul(s, b, G)) if span > 1 else None
        for b, s, span in zip(B.elements, widths, spans)
    ]
    n = B.n
    hi = [0] * n

    def walk(cur: Element, j: int):
        if j == n:
            counter.tick("hash_lookup")
            return baby.get(cur)
        span = spans[j]
        for v in range(span):
            hi[j] = v
            found = walk(cur, j + 1)
            if found is not None:
                return found
            if v < span - 1:
                cur = G.add(cur, steps[j])
        return None

    lo = walk(target, 0)
    if lo is None:
        raise NotInSubgroup("target is not in the span of the basis")
    return tuple((l + s * h) % o for l, s, h, o in zip(lo, widths, hi, orders))


def solve_edlp(w: Element, B: IndependentBasis, G: AbelianGroup) -> EdlpSolution:
    """Least ``z >= 1`` with ``z*w`` in ``<B>``, and the coefficients of ``z*w``.

    ``w`` must have order a power of ``B.p``. The set of ``t`` with
    ``p^t * w`` in ``<B>`` is upward closed, so ``z`` is found by trying
    ``t = 0, 1, ...`` in turn. When ``z == ord(w)`` the cyclic group
    ``<w>`` meets ``<B>`` only in the identity.
    """
    p = B.p
    cap = G.factorization.exponent_of(p)
    with G.counter.phase("edlp"):
        target = w
        z = 1
        for _ in range(cap + 1):
            if G.is_identity(target):
                return EdlpSolution(z, (0,) * B.n)
            try:
                return EdlpSolution(z, subgroup_dlp(target, B, G))
            except NotInSubgroup:
                pass
            target = scalar_mul(p, target, G)
            z *= p
    raise ValueError(f"order of {w!r} is not a power of {p} dividing the group order")
