"""Integers carried together with their prime factorization."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod

from sympy import factorint, isprime

from .errors import InvalidFactorization

_TERM = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Factorization:
    """``n`` with ``factors = ((p_1, a_1), ..., (p_k, a_k))``, primes increasing.

    Construction checks every prime with a primality test and that the
    product matches ``n``.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        factors = tuple((int(p), int(a)) for p, a in self.factors)
        object.__setattr__(self, "factors", factors)
        if self.n < 1:
            raise InvalidFactorization(f"n must be positive, got {self.n}")
        last = 1
        for p, a in factors:
            if a < 1:
                raise InvalidFactorization(f"exponent of {p} must be >= 1, got {a}")
            if p <= last:
                raise InvalidFactorization("primes must be strictly increasing")
            if not isprime(p):
                raise InvalidFactorization(f"{p} is not prime")
            last = p
        if prod(p**a for p, a in factors) != self.n:
            raise InvalidFactorization(f"factors do not multiply to {self.n}")

    @classmethod
    def from_factors(cls, factors) -> "Factorization":
        """Build from ``{p: a}`` or ``[(p, a), ...]`` in any order; repeats merge."""
        items = factors.items() if isinstance(factors, dict) else factors
        merged: dict[int, int] = {}
        for p, a in items:
            merged[int(p)] = merged.get(int(p), 0) + int(a)
        fs = tuple(sorted((p, a) for p, a in merged.items() if a))
        return cls(prod(p**a for p, a in fs), fs)

    @classmethod
    def of(cls, n: int) -> "Factorization":
        """Factor ``n`` explicitly. Convenience for small inputs; the
        structure algorithms never call this themselves."""
        if n < 1:
            raise InvalidFactorization(f"n must be positive, got {n}")
        return cls(n, tuple(sorted(factorint(n).items())))

    @classmethod
    def parse(cls, text: str) -> "Factorization":
        """Parse ``"2^3 3 5^2"`` (separators: whitespace, ``*`` or ``,``).

        An empty string or ``"1"`` is the factorization of 1.
        """
        terms = [t for t in re.split(r"[\s*,]+", text.strip()) if t]
        merged = []
        for t in terms:
            m = _TERM.match(t)
            if not m:
                raise InvalidFactorization(f"cannot parse factor {t!r}")
            p, a = int(m.group(1)), int(m.group(2) or 1)
            if p == 1:
                continue
            merged.append((p, a))
        return cls.from_factors(merged)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def k(self) -> int:
        return len(self.factors)

    def exponent_of(self, p: int) -> int:
        for q, a in self.factors:
            if q == p:
                return a
        return 0

    def prime_power(self, p: int) -> int:
        return p ** self.exponent_of(p)

    def __mul__(self, other: "Factorization") -> "Factorization":
        return Factorization.from_factors(list(self.factors) + list(other.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)
