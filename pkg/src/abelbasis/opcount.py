"""Operation counters with a per-phase breakdown."""

from __future__ import annotations

import csv
import io
from collections import Counter
from contextlib import contextmanager

COUNTERS = ("add", "negate", "eq", "hash_insert", "hash_lookup")
PHASES = ("order", "edlp", "extend", "marking", "other")


class OpReport:
    """Monotone counters attributed to whichever phase is active.

    Phases nest; the innermost active phase receives the ticks. ``group_ops``
    is adds plus negates, the unit every cost bound in this package uses.
    Equality tests are tallied separately under ``eq``.
    """

    def __init__(self):
        self._phases: dict[str, Counter] = {}
        self._stack = ["other"]

    def tick(self, kind: str, amount: int = 1) -> None:
        phase = self._stack[-1]
        c = self._phases.get(phase)
        if c is None:
            c = self._phases[phase] = Counter()
        c[kind] += amount

    @contextmanager
    def phase(self, name: str):
        self._stack.append(name)
        try:
            yield self
        finally:
            self._stack.pop()

    def get(self, kind: str, phase: str | None = None) -> int:
        if phase is not None:
            return self._phases.get(phase, Counter())[kind]
        return sum(c[kind] for c in self._phases.values())

    @property
    def group_ops(self) -> int:
        return self.get("add") + self.get("negate")

    @property
    def eq_tests(self) -> int:
        return self.get("eq")

    def phase_group_ops(self, phase: str) -> int:
        return self.get("add", phase) + self.get("negate", phase)

    def phases(self) -> list[str]:
        known = [p for p in PHASES if p in self._phases]
        return known + sorted(p for p in self._phases if p not in PHASES)

    def totals(self) -> dict[str, int]:
        return {k: self.get(k) for k in COUNTERS}

    def as_dict(self) -> dict:
        out = {p: {k: self._phases[p][k] for k in COUNTERS} for p in self.phases()}
        out["total"] = self.totals()
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["phase", "counter", "value"])
        for phase, counts in self.as_dict().items():
            for k in COUNTERS:
                w.writerow([phase, k, counts[k]])
        return buf.getvalue()

    def __repr__(self) -> str:
        return f"OpReport(group_ops={self.group_ops}, eq_tests={self.eq_tests})"
