"""Cesaro means of the shift iterates and exact averaging of eventually periodic sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .collatz_core import DEFAULT_ITER_BUDGET, OrbitCache, iterate_via_orbit, orbit_until_cycle
from .series_engine import GridSpec, ToleranceBudget, check_disk, choose_truncation

__all__ = [
    "PeriodicSpec",
    "GridSpec",
    "CesaroReport",
    "periodic_mean_limit",
    "periodic_running_mean",
    "periodic_error_witness",
    "brute_force_mean",
    "orbit_periodic_spec",
    "g_term",
    "g_limit",
    "cesaro_mean",
    "target_limit",
    "convergence_report",
]


@dataclass(frozen=True, eq=False)
class PeriodicSpec:
    """a_1, ..., a_{K-1} from ``preamble``, then ``cycle`` repeated forever.

    Entries may be scalars or equally shaped arrays (e.g. one value per grid
    angle); axis 0 always indexes the sequence.
    """

    preamble: np.ndarray
    cycle: np.ndarray

    def __post_init__(self):
        cycle = np.asarray(self.cycle, dtype=np.complex128)
        if cycle.shape[:1] == (0,) or cycle.ndim == 0:
            raise ValueError("cycle must be non-empty")
        preamble = np.asarray(self.preamble, dtype=np.complex128)
        if preamble.size == 0:
            preamble = np.zeros((0,) + cycle.shape[1:], dtype=np.complex128)
        if preamble.shape[1:] != cycle.shape[1:]:
            raise ValueError("preamble and cycle entries must share a shape")
        object.__setattr__(self, "preamble", preamble)
        object.__setattr__(self, "cycle", cycle)

    @property
    def K(self) -> int:
        """Index where repetition starts (1-based)."""
        return len(self.preamble) + 1

    @property
    def P(self) -> int:
        return len(self.cycle)

    def term(self, i: int):
        """a_i, 1-based."""
        if i < self.K:
            return self.preamble[i - 1]
        return self.cycle[(i - self.K) % self.P]


def _div(total, n: int):
    # component-wise: complex division by a real count is not exact in numpy
    total = np.asarray(total)
    return total.real / n + 1j * (total.imag / n)


def periodic_mean_limit(spec: PeriodicSpec):
    """Average of one period: the limit of the running means."""
    return _div(spec.cycle.sum(axis=0), spec.P)


def periodic_running_mean(spec: PeriodicSpec, n: int):
    """(1/n) sum_{i=1}^n a_i in O(K + P).

    Preamble sum W, plus floor((n-K+1)/P) whole cycles of sum V, plus the
    leftover partial cycle.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    L = len(spec.preamble)
    if n <= L:
        return _div(spec.preamble[:n].sum(axis=0), n)
    whole, rem = divmod(n - L, spec.P)
    W = spec.preamble.sum(axis=0)
    V = spec.cycle.sum(axis=0)
    return _div(W + whole * V + spec.cycle[:rem].sum(axis=0), n)


def brute_force_mean(spec: PeriodicSpec, n: int):
    """Reference mean by summing a_1..a_n one term at a time."""
    total = 0
    for i in range(1, n + 1):
        total = total + spec.term(i)
    return _div(total, n)


def periodic_error_witness(spec: PeriodicSpec):
    """Upper bound on n * |running_mean(n) - limit| valid for every n >= 1.

    For n >= K-1 the error splits as (W - (K-1) mu) + (S_s - s mu), with mu the
    limit and S_s the partial sum of the first s cycle terms; earlier n are
    covered by the preamble partial sums directly.
    """
    mu = periodic_mean_limit(spec)
    L = len(spec.preamble)
    P = spec.P
    shape = spec.cycle.shape[1:]
    pre_partial = np.concatenate([np.zeros((1,) + shape), np.cumsum(spec.preamble, axis=0)])
    steps = np.arange(L + 1).reshape((-1,) + (1,) * len(shape))
    early = np.max(np.abs(pre_partial - steps * mu), axis=0)
    cyc_partial = np.concatenate([np.zeros((1,) + shape), np.cumsum(spec.cycle, axis=0)[:-1]])
    s = np.arange(P).reshape((-1,) + (1,) * len(shape))
    late = np.abs(pre_partial[-1] - L * mu) + np.max(np.abs(cyc_partial - s * mu), axis=0)
    return np.maximum(early, late)


def orbit_periodic_spec(
    m: int,
    theta,
    budget: int = DEFAULT_ITER_BUDGET,
    cache: Optional[OrbitCache] = None,
) -> PeriodicSpec:
    """The sequence e^{i C^j(m) theta}, j = 1, 2, ..., as a PeriodicSpec."""
    rec = orbit_until_cycle(m, budget, cache)
    theta = np.asarray(theta, dtype=np.float64)
    first = max(rec.preperiod_K, 1)
    pre_freqs = np.array(rec.prefix[1:first], dtype=np.float64)
    cyc_freqs = np.array(
        [iterate_via_orbit(rec, j) for j in range(first, first + rec.period)], dtype=np.float64
    )
    expand = (slice(None),) + (None,) * theta.ndim
    return PeriodicSpec(
        np.exp(1j * pre_freqs[expand] * theta),
        np.exp(1j * cyc_freqs[expand] * theta),
    )


def g_term(m: int, n: int, theta, budget: int = DEFAULT_ITER_BUDGET,
           cache: Optional[OrbitCache] = None):
    """(1/n) sum_{j=1}^n exp(i C^j(m) theta), without looping over j."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    return periodic_running_mean(orbit_periodic_spec(m, theta, budget, cache), n)


def g_limit(theta):
    """(e^{i theta} + e^{2i theta} + e^{4i theta}) / 3."""
    theta = np.asarray(theta, dtype=np.float64)
    out = (np.exp(1j * theta) + np.exp(2j * theta) + np.exp(4j * theta)) / 3
    return out[()] if out.ndim == 0 else out


def cesaro_mean(c: complex, n: int, theta, R: int, budget: int = DEFAULT_ITER_BUDGET,
                cache: Optional[OrbitCache] = None):
    """M_n(theta) truncated at R: 1 + sum_{m=1}^R c^m g_{n,m}(theta).

    The m = 0 term is exactly 1 because frequency 0 is fixed by the map.
    """
    c = check_disk(c)
    if n < 1:
        raise ValueError("n must be >= 1")
    theta = np.asarray(theta, dtype=np.float64)
    total = np.ones(theta.shape, dtype=np.complex128)
    for m in range(1, R + 1):
        total = total + c**m * g_term(m, n, theta, budget, cache)
    return total[()] if total.ndim == 0 else total


def target_limit(c: complex, theta):
    """1 + g_limit(theta) * c / (1 - c), the predicted limit of M_n."""
    c = check_disk(c)
    return 1 + g_limit(theta) * c / (1 - c)


@dataclass
class CesaroReport:
    c: complex
    G: int
    R: int
    n_schedule: List[int]
    sup_distance: List[float]
    per_point: Optional[List[np.ndarray]] = field(default=None, repr=False)
    eps_tail: float = 0.0
    eps_round: float = 0.0

    @property
    def n_max(self) -> int:
        return self.n_schedule[-1]

    @property
    def final_distance(self) -> float:
        return self.sup_distance[-1]

    def rows(self):
        return list(zip(self.n_schedule, self.sup_distance))

    def is_decreasing(self, strict: bool = True) -> bool:
        d = self.sup_distance
        if strict:
            return all(b < a for a, b in zip(d, d[1:]))
        return all(b <= a for a, b in zip(d, d[1:]))

    def scaled(self) -> List[float]:
        """n * sup_distance(n); flat when the decay is O(1/n)."""
        return [n * d for n, d in zip(self.n_schedule, self.sup_distance)]

    def within_ratio_band(self, factor: float = 2.0, floor: float = 1e-9) -> bool:
        """max(n d_n) <= factor * min(n d_n) across the schedule.

        ``floor`` absorbs the degenerate case where every n d_n is rounding
        noise around zero (e.g. c = 0).
        """
        s = self.scaled()
        return max(s) <= factor * min(s) + floor


def convergence_report(
    c: complex,
    grid: GridSpec,
    n_schedule: Sequence[int],
    budget: ToleranceBudget,
    keep_points: bool = False,
    orbit_budget: int = DEFAULT_ITER_BUDGET,
    cache: Optional[OrbitCache] = None,
) -> CesaroReport:
    """sup over the grid of |M_n - target| for each n in the schedule."""
    c = check_disk(c)
    schedule = [int(n) for n in n_schedule]
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise ValueError("n_schedule must be non-empty, positive and ascending")
    R = choose_truncation(c, budget.eps_tail)
    theta = grid.points
    target = target_limit(c, theta)
    sups, points = [], []
    for n in schedule:
        dist = np.abs(cesaro_mean(c, n, theta, R, orbit_budget, cache) - target)
        sups.append(float(np.max(dist)))
        if keep_points:
            points.append(dist)
    return CesaroReport(
        c=c,
        G=grid.G,
        R=R,
        n_schedule=schedule,
        sup_distance=sups,
        per_point=points if keep_points else None,
        eps_tail=budget.eps_tail,
        eps_round=budget.eps_round,
    )
