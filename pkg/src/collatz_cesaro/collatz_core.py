"""Exact integer Collatz dynamics: the map, its iterates and cached orbits.

All arithmetic stays inside the signed 64-bit range; a step that would leave
it raises :class:`CollatzOverflowError` instead of wrapping.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

INT64_MAX = 2**63 - 1
# largest odd n with 3n + 1 <= INT64_MAX
_ODD_LIMIT = (INT64_MAX - 1) // 3

DEFAULT_ITER_BUDGET = 10**6
CYCLE_VALUES = frozenset((1, 2, 4))
_CYCLE_ROTATIONS = {1: (1, 4, 2), 4: (4, 2, 1), 2: (2, 1, 4)}


class CollatzOverflowError(OverflowError):
    """3n+1 left the 64-bit integer range."""


class IterationBudgetExceeded(RuntimeError):
    pass


class OrbitBudgetExceeded(RuntimeError):
    """No cycle entry within the step budget.

    This is what a counterexample (or a gigantic orbit) would look like, so
    it is never swallowed.
    """

    def __init__(self, start: int, budget: int):
        self.start = start
        self.budget = budget
        super().__init__(
            f"no cycle found within budget: start={start} did not reach "
            f"{{1,2,4}} in {budget} steps"
        )


def collatz_step(n: int) -> int:
    """One application of the Collatz map, extended by C(0) = 0."""
    n = int(n)
    if n < 0:
        raise ValueError(f"collatz_step needs n >= 0, got {n}")
    if n % 2 == 0:
        return n // 2
    if n > _ODD_LIMIT:
        raise CollatzOverflowError(f"3*{n}+1 exceeds the 64-bit range")
    return 3 * n + 1


def collatz_step_array(values: np.ndarray) -> np.ndarray:
    """Vectorised :func:`collatz_step` over an int64 array."""
    values = np.asarray(values, dtype=np.int64)
    if np.any(values < 0):
        raise ValueError("frequencies must be non-negative")
    odd = (values & 1) == 1
    if np.any(values[odd] > _ODD_LIMIT):
        raise CollatzOverflowError("3n+1 exceeds the 64-bit range")
    return np.where(odd, 3 * values + 1, values // 2)


def collatz_iter(m: int, k: int, budget: int = DEFAULT_ITER_BUDGET) -> int:
    """Return C^k(m) by repeated stepping; C^0(m) = m."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > budget:
        raise IterationBudgetExceeded(f"{k} steps requested, budget is {budget}")
    n = int(m)
    if n < 0:
        raise ValueError("m must be non-negative")
    for _ in range(k):
        n = collatz_step(n)
    return n


@dataclass(frozen=True)
class OrbitRecord:
    """Trajectory of ``start`` up to and including its first cycle value.

    ``prefix[preperiod_K]`` is the first element in {1, 2, 4}; ``cycle`` is the
    1 -> 4 -> 2 rotation beginning at that element.  Start 0 is its own
    fixed point: ``cycle == (0,)`` and ``preperiod_K == 0``.
    """

    start: int
    prefix: Tuple[int, ...]
    preperiod_K: int
    cycle: Tuple[int, ...]
    max_excursion: int
    steps_computed: int

    @property
    def period(self) -> int:
        return len(self.cycle)

    def validate(self) -> None:
        p = self.prefix
        if not p or p[0] != self.start:
            raise ValueError("prefix must begin with start")
        for a, b in zip(p, p[1:]):
            if collatz_step(a) != b:
                raise ValueError(f"prefix breaks the map at {a} -> {b}")
        if self.preperiod_K != len(p) - 1:
            raise ValueError("preperiod_K must index the last prefix entry")
        if self.start == 0:
            if self.cycle != (0,):
                raise ValueError("orbit of 0 must have cycle (0,)")
        else:
            if any(v in CYCLE_VALUES for v in p[:-1]) or p[-1] not in CYCLE_VALUES:
                raise ValueError("prefix must stop at its first cycle value")
            if self.cycle != _CYCLE_ROTATIONS[p[-1]]:
                raise ValueError("cycle rotation does not match the entry point")
        if self.max_excursion != max(p):
            raise ValueError("max_excursion must equal max(prefix)")


def _compute_orbit(m: int, budget: int) -> OrbitRecord:
    if m == 0:
        return OrbitRecord(0, (0,), 0, (0,), 0, 0)
    prefix = [m]
    n = m
    while n not in CYCLE_VALUES:
        if len(prefix) > budget:
            raise OrbitBudgetExceeded(m, budget)
        n = collatz_step(n)
        prefix.append(n)
    return OrbitRecord(
        start=m,
        prefix=tuple(prefix),
        preperiod_K=len(prefix) - 1,
        cycle=_CYCLE_ROTATIONS[n],
        max_excursion=max(prefix),
        steps_computed=len(prefix) - 1,
    )


class OrbitCache:
    """Append-only, thread-safe store of orbits keyed by start value."""

    def __init__(self) -> None:
        self._records: Dict[int, OrbitRecord] = {}
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, start: int) -> bool:
        return start in self._records

    def get_or_compute(self, m: int, budget: int = DEFAULT_ITER_BUDGET) -> OrbitRecord:
        with self._lock:
            rec = self._records.get(m)
            if rec is None:
                rec = _compute_orbit(m, budget)
                self._records[m] = rec
            elif rec.steps_computed > budget:
                # same outcome whether or not the orbit was cached earlier
                raise OrbitBudgetExceeded(m, budget)
            return rec

    def save(self, path: str | os.PathLike) -> None:
        """Write one ``start,preperiod_K,max_excursion,prefix...`` line per orbit."""
        with self._lock:
            records = [self._records[k] for k in sorted(self._records)]
        with open(path, "w") as fh:
            for r in records:
                fields = [r.start, r.preperiod_K, r.max_excursion, *r.prefix]
                fh.write(",".join(str(v) for v in fields) + "\n")

    def load(self, path: str | os.PathLike) -> int:
        """Merge records from ``path``; a missing file is a cold cache.

        Returns the number of records read.
        """
        if not os.path.exists(path):
            return 0
        count = 0
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    start, k, excursion, *prefix = (int(v) for v in line.split(","))
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: malformed orbit record") from exc
                rec = OrbitRecord(
                    start=start,
                    prefix=tuple(prefix),
                    preperiod_K=k,
                    cycle=(0,) if start == 0 else _CYCLE_ROTATIONS.get(prefix[-1], ()),
                    max_excursion=excursion,
                    steps_computed=k,
                )
                try:
                    rec.validate()
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: {exc}") from exc
                with self._lock:
                    self._records.setdefault(start, rec)
                count += 1
        return count


DEFAULT_CACHE = OrbitCache()


def orbit_until_cycle(
    m: int, budget: int = DEFAULT_ITER_BUDGET, cache: Optional[OrbitCache] = None
) -> OrbitRecord:
    """Trajectory of ``m`` until it first hits {1, 2, 4}, cached by start."""
    m = int(m)
    if m < 0:
        raise ValueError("start must be non-negative")
    return (DEFAULT_CACHE if cache is None else cache).get_or_compute(m, budget)


def iterate_via_orbit(record: OrbitRecord, j: int) -> int:
    """C^j(start) in O(1) from a computed orbit."""
    if j < record.preperiod_K:
        return record.prefix[j]
    return record.cycle[(j - record.preperiod_K) % record.period]
