"""Divisor tables, element orders and the split of an element into its
prime-power components."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .errors import OrderNotFound
from .factorization import Factorization
from .groups import AbelianGroup, Element, scalar_mul


@dataclass(frozen=True)
class DivisorTable:
    """All divisors of N in increasing order, each with its exponent vector."""

    factorization: Factorization
    entries: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def tau(self) -> int:
        return len(self.entries)

    @property
    def divisors(self) -> list[int]:
        return [d for d, _ in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class OrderResult:
    m: int
    exponents: tuple[int, ...]
    cofactors: tuple[int, ...]


def enumerate_divisors(f: Factorization) -> DivisorTable:
    primes = f.primes
    entries = [
        (prod(p**b for p, b in zip(primes, bs)), bs)
        for bs in itertools.product(*(range(a + 1) for _, a in f.factors))
    ]
    entries.sort()
    return DivisorTable(f, tuple(entries))


def element_order(x: Element, D: DivisorTable, G: AbelianGroup) -> OrderResult:
    """Order of ``x``: the first divisor in increasing order that kills it.

    The scan must run in increasing order; the first annihilating divisor is
    the order only because every smaller divisor has already been rejected.
    """
    with G.counter.phase("order"):
        for d, bs in D.entries:
            if G.is_identity(scalar_mul(d, x, G)):
                primes = D.factorization.primes
                cofactors = tuple(d // p**b for p, b in zip(primes, bs))
                return OrderResult(d, bs, cofactors)
    raise OrderNotFound(f"no divisor of {D.factorization.n} annihilates {x!r}")


def primary_split(x: Element, r: OrderResult, G: AbelianGroup, D: DivisorTable | None = None):
    """Components ``[(p, x_p, p^b), ...]`` of ``x`` for primes with b >= 1.

    ``x_p = (m / p^b) * x`` has order exactly ``p^b`` and ``<x>`` is the
    direct sum of the ``<x_p>``.
    """
    f = D.factorization if D is not None else G.factorization
    out = []
    with G.counter.phase("order"):
        for p, b, c in zip(f.primes, r.exponents, r.cofactors):
            if b:
                out.append((p, scalar_mul(c, x, G), p**b))
    return out
