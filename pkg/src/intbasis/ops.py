"""Operation counters used by the benchmark harness.

Every field multiplication and inversion bumps a process-wide counter.
Extension-field products are charged ``k**2`` base multiplications and
inversions ``k**2`` as well, so reports are expressed in operations over
the prime field.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class OpCounter:
    mul: int = 0
    inv: int = 0
    phases: dict = field(default_factory=dict)
    _stack: list = field(default_factory=list)

    def reset(self) -> None:
        self.mul = 0
        self.inv = 0
        self.phases = {}
        self._stack = []

    @contextmanager
    def phase(self, name: str):
        # Nested phases are charged to the innermost one only.
        start = (self.mul, self.inv, time.perf_counter())
        self._stack.append([0, 0])
        try:
            yield
        finally:
            inner_mul, inner_inv = self._stack.pop()
            dm = self.mul - start[0]
            di = self.inv - start[1]
            dt = time.perf_counter() - start[2]
            entry = self.phases.setdefault(name, {"mul": 0, "inv": 0, "time": 0.0})
            entry["mul"] += dm - inner_mul
            entry["inv"] += di - inner_inv
            entry["time"] += dt
            if self._stack:
                self._stack[-1][0] += dm
                self._stack[-1][1] += di

    def snapshot(self) -> dict:
        return {
            "field_mul": self.mul,
            "field_inv": self.inv,
            "phases": {k: dict(v) for k, v in sorted(self.phases.items())},
        }


COUNTER = OpCounter()
