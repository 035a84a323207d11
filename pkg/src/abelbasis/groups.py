"""Abelian group oracles.

Every backend exposes the same additive interface: ``identity``, ``add``,
``negate`` and ``equal``, plus the factorization of the group order. Each
``add``/``negate`` call ticks the group's :class:`OpReport`, so algorithms
running over an oracle can be costed in group operations.

Element tokens are plain hashable Python values (``int`` for tables and
units, ``tuple`` of ints for products), which lets search tables and
membership arrays key on them directly.
"""

from __future__ import annotations

import itertools
import re
from math import gcd, prod
from pathlib import Path
from typing import Hashable, Iterator, Sequence

import numpy as np

from .errors import (
    BadModulus,
    FactorizationMismatch,
    NoIdentity,
    NotAbelian,
    NotEnumerable,
    NotGroup,
)
from .factorization import Factorization
from .opcount import OpReport

Element = Hashable


class AbelianGroup:
    """Base oracle. Subclasses implement ``_add`` and ``_negate``."""

    enumerable = False

    def __init__(self, factorization: Factorization):
        self.factorization = factorization
        self.counter = OpReport()

    @property
    def order(self) -> int:
        return self.factorization.n

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    @property
    def op_count(self) -> int:
        return self.counter.group_ops

    def reset_counter(self) -> OpReport:
        """Start a fresh counting session and return its report."""
        self.counter = OpReport()
        return self.counter

    def add(self, x: Element, y: Element) -> Element:
        self.counter.tick("add")
        return self._add(x, y)

    def negate(self, x: Element) -> Element:
        self.counter.tick("negate")
        return self._negate(x)

    def equal(self, x: Element, y: Element) -> bool:
        self.counter.tick("eq")
        return x == y

    def is_identity(self, x: Element) -> bool:
        return self.equal(x, self.identity)

    def elements(self) -> Iterator[Element]:
        raise NotEnumerable(f"{type(self).__name__} cannot enumerate its elements")

    def index(self, x: Element) -> int:
        """Position of ``x`` in :meth:`elements` order (enumerable backends)."""
        raise NotEnumerable(f"{type(self).__name__} cannot index its elements")

    def sort_key(self, x: Element):
        return x

    def parse_element(self, text: str) -> Element:
        raise NotImplementedError

    def format_element(self, x: Element) -> str:
        return str(x)

    def _add(self, x, y):
        raise NotImplementedError

    def _negate(self, x):
        raise NotImplementedError


def scalar_mul(a: int, x: Element, G: AbelianGroup) -> Element:
    """``a * x`` by left-to-right double-and-add.

    Uses at most ``2 * floor(log2(a))`` group operations for ``a >= 1`` and
    none for ``a == 0``. ``a`` need not be reduced modulo the order of ``x``.
    """
    if a < 0:
        raise ValueError("scalar must be nonnegative; negate the element instead")
    if a == 0:
        return G.identity
    result = x
    for bit in bin(a)[3:]:
        result = G.add(result, result)
        if bit == "1":
            result = G.add(result, x)
    return result


def enumerate_elements(G: AbelianGroup) -> Iterator[Element]:
    if not G.enumerable:
        raise NotEnumerable(f"{type(G).__name__} cannot enumerate its elements")
    return G.elements()


# -- Cayley tables ---------------------------------------------------------


class TableGroup(AbelianGroup):
    """Group given by its full addition table over indices ``0..N-1``."""

    enumerable = True

    def __init__(self, table, factorization: Factorization, identity_index: int):
        super().__init__(factorization)
        self._rows: list[list[int]] = np.asarray(table).tolist()
        self.identity_index = identity_index
        arr = np.asarray(table)
        self._inverse: list[int] = np.argmax(arr == identity_index, axis=1).tolist()

    @property
    def identity(self) -> int:
        return self.identity_index

    @property
    def table(self) -> np.ndarray:
        return np.array(self._rows, dtype=np.int64)

    def _add(self, x, y):
        return self._rows[x][y]

    def _negate(self, x):
        return self._inverse[x]

    def elements(self):
        return iter(range(self.order))

    def index(self, x):
        return x

    def parse_element(self, text):
        x = int(text)
        if not 0 <= x < self.order:
            raise ValueError(f"table index {x} out of range 0..{self.order - 1}")
        return x


def make_table_group(
    table,
    factorization: Factorization | None = None,
    validate: bool = True,
    check_associativity: bool = False,
) -> TableGroup:
    """Build a :class:`TableGroup`, detecting the identity by row scan.

    With ``validate`` the table must be a symmetric Latin square;
    ``check_associativity`` adds the O(N^3) associativity check.
    """
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise NotGroup(f"table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise NotGroup(f"table entries must lie in 0..{n - 1}")
    if factorization is None:
        factorization = Factorization.of(n)
    elif factorization.n != n:
        raise FactorizationMismatch(f"table has {n} rows but factorization is of {factorization.n}")

    idx = np.arange(n)
    candidates = np.flatnonzero((arr == idx).all(axis=1))
    if len(candidates) == 0:
        raise NoIdentity("no row acts as the identity")
    identity = int(candidates[0])
    if not (arr[:, identity] == idx).all():
        raise NoIdentity(f"row {identity} is a left identity but column {identity} is not")

    if validate:
        if not (np.sort(arr, axis=1) == idx).all() or not (np.sort(arr, axis=0) == idx[:, None]).all():
            raise NotGroup("table is not a Latin square")
        if not (arr == arr.T).all():
            i, j = np.argwhere(arr != arr.T)[0]
            raise NotAbelian(f"{i}+{j} != {j}+{i}")
    if check_associativity:
        # (x+y)+z == x+(y+z) for all triples, one x at a time
        for x in range(n):
            lhs = arr[arr[x]]  # lhs[y, z] = (x+y)+z
            rhs = arr[x][arr]  # rhs[y, z] = x+(y+z)
            if not (lhs == rhs).all():
                raise NotGroup(f"associativity fails with first argument {x}")
    return TableGroup(arr, factorization, identity)


def read_table_file(path, validate: bool = True, check_associativity: bool = False) -> TableGroup:
    return parse_table_text(Path(path).read_text(), validate, check_associativity)


def parse_table_text(text: str, validate: bool = True, check_associativity: bool = False) -> TableGroup:
    """Parse ``"N p1^a1 ..."`` followed by N rows of N indices."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise NotGroup("empty table file")
    head = lines[0].split()
    try:
        n = int(head[0])
    except ValueError as exc:
        raise NotGroup(f"bad header {lines[0]!r}") from exc
    fact = Factorization.parse(" ".join(head[1:]))
    if fact.n != n:
        raise FactorizationMismatch(f"header says N={n} but factors multiply to {fact.n}")
    rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise NotGroup(f"expected {n} rows of {n} entries")
    return make_table_group(rows, fact, validate=validate, check_associativity=check_associativity)


def format_table(G: AbelianGroup) -> str:
    """Serialize an enumerable group in the table file format."""
    elems = list(enumerate_elements(G))
    pos = {x: i for i, x in enumerate(elems)}
    lines = [f"{G.order} {G.factorization}".rstrip()]
    for x in elems:
        lines.append(" ".join(str(pos[G._add(x, y)]) for y in elems))
    return "\n".join(lines) + "\n"


def table_of(G: AbelianGroup, relabel: Sequence[int] | None = None) -> np.ndarray:
    """Addition table of an enumerable group, optionally with element ``i``
    renamed to ``relabel[i]``. Computed without touching the op counter."""
    elems = list(enumerate_elements(G))
    n = len(elems)
    pos = {x: i for i, x in enumerate(elems)}
    perm = np.arange(n) if relabel is None else np.asarray(relabel)
    out = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            out[perm[i], perm[j]] = perm[pos[G._add(x, y)]]
    return out


# -- products of cyclic groups --------------------------------------------


class ProductGroup(AbelianGroup):
    """``Z_{n_1} x ... x Z_{n_m}`` on coefficient tuples."""

    enumerable = True

    def __init__(self, moduli: Sequence[int], factorization: Factorization):
        super().__init__(factorization)
        self.moduli = tuple(moduli)
        self._zero = tuple(0 for _ in self.moduli)
        strides = []
        s = 1
        for n in reversed(self.moduli):
            strides.append(s)
            s *= n
        self._strides = tuple(reversed(strides))

    @property
    def identity(self):
        return self._zero

    def _add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def _negate(self, x):
        return tuple(-a % n for a, n in zip(x, self.moduli))

    def elements(self):
        return itertools.product(*(range(n) for n in self.moduli))

    def index(self, x):
        return sum(a * s for a, s in zip(x, self._strides))

    def parse_element(self, text):
        parts = [t for t in re.split(r"[\s,()]+", text) if t]
        if len(parts) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} coordinates, got {text!r}")
        return tuple(int(a) % n for a, n in zip(parts, self.moduli))

    def format_element(self, x):
        if len(x) == 1:
            return str(x[0])
        return "(" + ",".join(map(str, x)) + ")"

    def __repr__(self):
        return "ProductGroup(" + "x".join(f"Z{n}" for n in self.moduli) + ")"


def make_product_group(moduli: Sequence[int], factorization: Factorization | None = None) -> ProductGroup:
    moduli = [int(n) for n in moduli]
    for n in moduli:
        if n < 2:
            raise BadModulus(f"cyclic factor modulus must be >= 2, got {n}")
    expected = Factorization.from_factors(
        [pa for n in moduli for pa in Factorization.of(n).factors]
    )
    if factorization is None:
        factorization = expected
    elif factorization != expected:
        raise FactorizationMismatch(
            f"product of moduli is {prod(moduli)} = {expected}, got {factorization}"
        )
    return ProductGroup(moduli, factorization)


def parse_product_spec(spec: str) -> list[int]:
    """``"Z4xZ2xZ9"`` or ``"z4x2x9"`` -> ``[4, 2, 9]``."""
    parts = spec.strip().lower().split("x")
    moduli = []
    for part in parts:
        part = part.strip()
        if part.startswith("z"):
            part = part[1:]
        if not part.isdigit():
            raise ValueError(f"cannot parse cyclic factor {part!r} in {spec!r}")
        moduli.append(int(part))
    return moduli


# -- units modulo n ---------------------------------------------------------


class UnitsModN(AbelianGroup):
    """Multiplicative group of residues coprime to ``n``, written additively.

    The order is taken from the supplied factorization of phi(n). With
    ``listing`` the residues are listed once, which makes the group
    enumerable and checks the supplied order.
    """

    def __init__(self, n: int, phi_factorization: Factorization, listing: bool = False):
        if n < 2:
            raise BadModulus(f"modulus must be >= 2, got {n}")
        super().__init__(phi_factorization)
        self.n = n
        self._listing = None
        if listing:
            units = [r for r in range(1, n) if gcd(r, n) == 1]
            if len(units) != phi_factorization.n:
                raise FactorizationMismatch(
                    f"there are {len(units)} units mod {n}, factorization says {phi_factorization.n}"
                )
            self._listing = units
            self._pos = {r: i for i, r in enumerate(units)}
            self.enumerable = True

    @property
    def identity(self):
        return 1

    def _add(self, x, y):
        return x * y % self.n

    def _negate(self, x):
        return pow(x, -1, self.n)

    def elements(self):
        if self._listing is None:
            return super().elements()
        return iter(self._listing)

    def index(self, x):
        if self._listing is None:
            return super().index(x)
        return self._pos[x]

    def parse_element(self, text):
        x = int(text) % self.n
        if gcd(x, self.n) != 1:
            raise ValueError(f"{text} is not a unit modulo {self.n}")
        return x

    def __repr__(self):
        return f"UnitsModN({self.n})"
