"""Operation-count benchmark over a ladder of product groups."""

from __future__ import annotations

import csv
import io
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .groups import make_product_group, parse_product_spec
from .structure import (
    CanonicalInvariants,
    basis_cyclic,
    basis_from_generators,
    basis_from_table,
    canonical_invariants,
)

CSV_COLUMNS = ["N", "M", "algorithm", "group_ops", "eq_tests", "wall_time", "sum_Gj", "ops_per_N"]

_RANGE = re.compile(r"^(cyclic|elementary):(\d+):(\d+)\.\.(\d+)$")


def parse_ladder(spec: str) -> list[list[int]]:
    """Ladder items separated by ``;``. Each item is a product spec
    (``Z4xZ2``), ``cyclic:P:A..B`` for Z_{P^t}, or ``elementary:P:A..B``
    for (Z_P)^t, with t running from A to B inclusive."""
    out = []
    for item in spec.split(";"):
        item = item.strip()
        if not item:
            continue
        m = _RANGE.match(item.lower())
        if m:
            kind, p, lo, hi = m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4))
            for t in range(lo, hi + 1):
                out.append([p**t] if kind == "cyclic" else [p] * t)
        else:
            out.append(parse_product_spec(item))
    return out


@dataclass
class BenchRow:
    moduli: list[int]
    N: int
    M: int
    algorithm: str
    group_ops: int
    eq_tests: int
    wall_time: float
    sum_Gj: int | None
    invariants: CanonicalInvariants

    def csv_fields(self, timing: bool = True) -> list:
        return [
            self.N,
            self.M,
            self.algorithm,
            self.group_ops,
            self.eq_tests,
            f"{self.wall_time:.6f}" if timing else "",
            "" if self.sum_Gj is None else self.sum_Gj,
            f"{self.group_ops / self.N:.6f}",
        ]


def _bench_generators(G, rng: random.Random, extra: int):
    """Coordinate unit vectors plus ``extra`` random elements, shuffled."""
    m = len(G.moduli)
    gens = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    gens += [tuple(rng.randrange(n) for n in G.moduli) for _ in range(extra)]
    rng.shuffle(gens)
    return gens


def run_row(moduli: list[int], algorithm: str = "basis1", seed: int = 0, repetitions: int = 1, extra_gens: int = 2) -> BenchRow:
    algorithm = "basis1" if algorithm == "auto" else algorithm
    best = None
    for _ in range(max(1, repetitions)):
        G = make_product_group(moduli)
        gens = [] if algorithm == "basis1" else _bench_generators(G, random.Random(seed), extra_gens)
        G.reset_counter()
        start = time.perf_counter()
        if algorithm == "basis1":
            s = basis_from_table(G)
        elif algorithm == "basis2":
            s = basis_from_generators(G, gens)
        elif algorithm == "basis3":
            s = basis_cyclic(G, gens)
        else:
            raise ValueError(f"unknown algorithm {algorithm!r}")
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best.wall_time:
            best = BenchRow(
                list(moduli), G.order, len(gens), algorithm,
                G.counter.group_ops, G.counter.eq_tests, elapsed,
                s.stats.get("sum_sizes"), canonical_invariants(s),
            )
    return best


def run_bench(ladder: list[list[int]], algorithm: str = "basis1", seed: int = 0,
              repetitions: int = 1, jobs: int = 1) -> list[BenchRow]:
    """One row per ladder entry, in ladder order."""
    args = [(m, algorithm, seed, repetitions) for m in ladder]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_star, args))
    return [run_row(*a) for a in args]


def _run_star(a):
    return run_row(*a)


def rows_to_csv(rows: list[BenchRow], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields(timing))
    return buf.getvalue()
