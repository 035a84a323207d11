"""Extend an independent basis of a p-subgroup by one element.

Given a basis ``b_1..b_n`` of ``H`` and an element ``x`` with a relation
``p^k * x = sum(delta_i * b_i)`` where ``p^k`` is the least power of ``p``
taking ``x`` into ``H``, the relations among ``(b_1, ..., b_n, x)`` form the
integer lattice spanned by the rows

    ord(b_1) e_1, ..., ord(b_n) e_n, (-delta_1, ..., -delta_n, p^k).

Diagonalizing that matrix with unimodular row and column operations and
pushing the column operations onto the generators gives new generators
whose orders are the diagonal entries, each a power of ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .edlp import IndependentBasis, _is_power_of, combine
from .errors import NotMinimalPower, RelationInvalid
from .groups import AbelianGroup, Element, scalar_mul


@dataclass(frozen=True)
class Relation:
    """``power * x == sum(deltas[i] * b_i)``; ``power`` is a power of p."""

    power: int
    deltas: tuple[int, ...]


def diagonalize(M: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonalize a square nonsingular integer matrix.

    Returns ``(diag, Vinv)`` with ``U @ M @ V = diag(diag)`` for some
    unimodular ``U`` and ``V``, and ``Vinv`` the inverse of ``V``. Entries of
    ``diag`` are positive. Works on a copy.
    """
    A = [row[:] for row in M]
    n = len(A)
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    for t in range(n):
        while True:
            # pivot: smallest nonzero |entry| in the trailing block
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    a = A[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                raise ValueError("relation matrix is singular")
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
                Vinv[t], Vinv[j] = Vinv[j], Vinv[t]

            piv = A[t][t]
            clean = True
            for r in range(t + 1, n):
                q = A[r][t] // piv
                if q:
                    rt = A[t]
                    A[r] = [a - q * b for a, b in zip(A[r], rt)]
                if A[r][t]:
                    clean = False
            for c in range(t + 1, n):
                q = A[t][c] // piv
                if q:
                    # column c -= q * column t; inverse side: row t += q * row c
                    for row in A:
                        row[c] -= q * row[t]
                    Vinv[t] = [a + q * b for a, b in zip(Vinv[t], Vinv[c])]
                if A[t][c]:
                    clean = False
            if clean:
                break
    return [abs(A[t][t]) for t in range(n)], Vinv


def extend_basis(
    B: IndependentBasis,
    x: Element,
    rel: Relation,
    G: AbelianGroup,
    check: bool = True,
) -> IndependentBasis:
    """Basis of ``<B, x>``, sorted by descending order then token.

    ``check`` verifies the relation through the oracle (RelationInvalid) and
    looks for the cheap witness that ``p^(k-1)`` already suffices
    (NotMinimalPower).
    """
    p = B.p
    n = B.n
    if len(rel.deltas) != n:
        raise RelationInvalid(f"expected {n} coefficients, got {len(rel.deltas)}")
    deltas = tuple(int(d) % o for d, o in zip(rel.deltas, B.orders))
    if rel.power < 1 or not _is_power_of(p, rel.power):
        raise RelationInvalid(f"{rel.power} is not a power of {p}")

    with G.counter.phase("extend"):
        if check:
            lhs = scalar_mul(rel.power, x, G)
            if not G.equal(lhs, combine(deltas, B, G)):
                raise RelationInvalid("p^k * x does not equal the given combination")
            if rel.power > 1 and all(d % p == 0 for d in deltas):
                # p^(k-1) x - sum(delta_i/p b_i) == 0 would put p^(k-1) x in <B>
                y = scalar_mul(rel.power // p, x, G)
                h = combine([d // p for d in deltas], B, G)
                if G.equal(y, h):
                    raise NotMinimalPower(f"{rel.power // p} * x already lies in the span")
        if rel.power == 1:
            return B

        size = n + 1
        M = [[0] * size for _ in range(size)]
        for i, o in enumerate(B.orders):
            M[i][i] = o
        M[n] = [-d for d in deltas] + [rel.power]
        diag, Vinv = diagonalize(M)

        gens = list(B.elements) + [x]
        # reduce coefficients modulo a multiple of each generator's order
        x_bound = rel.power * max(B.orders, default=1)
        bounds = list(B.orders) + [x_bound]
        pairs = []
        for d, row in zip(diag, Vinv):
            if d == 1:
                continue
            acc = G.identity
            for c, g, bound in zip(row, gens, bounds):
                c %= bound
                if c:
                    acc = G.add(acc, scalar_mul(c, g, G))
            pairs.append((acc, d))
    pairs.sort(key=lambda pair: (-pair[1], G.sort_key(pair[0])))
    return IndependentBasis.from_pairs(p, pairs)
