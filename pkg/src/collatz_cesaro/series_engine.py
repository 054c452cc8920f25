"""Truncated frequency series sum_r a_r exp(i w_r theta) and tail-bound logic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def check_disk(c: complex) -> complex:
    c = complex(c)
    if not abs(c) < 1:
        raise ValueError(f"|c| must be < 1, got |c| = {abs(c)}")
    return c


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FrequencySeries:
    """One term per coefficient index r, even when frequencies collide.

    Merging terms that share a frequency would lose the index -> frequency map
    that the shift operator acts on, so collisions are kept as separate terms.
    """

    coeffs: np.ndarray
    freqs: np.ndarray
    applied_steps: int = 0

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        freqs = np.asarray(self.freqs, dtype=np.int64)
        if coeffs.ndim != 1 or coeffs.shape != freqs.shape:
            raise ValueError("coeffs and freqs must be 1-D and equally long")
        if np.any(freqs < 0):
            raise ValueError("frequencies must be non-negative")
        object.__setattr__(self, "coeffs", _frozen(coeffs))
        object.__setattr__(self, "freqs", _frozen(freqs))

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int:
        """Truncation order R (index of the last term)."""
        return len(self.coeffs) - 1

    def truncated(self, R: int) -> "FrequencySeries":
        return FrequencySeries(self.coeffs[: R + 1], self.freqs[: R + 1], self.applied_steps)

    def concat(self, other: "FrequencySeries") -> "FrequencySeries":
        """Term-list concatenation; evaluation is additive over it."""
        return FrequencySeries(
            np.concatenate([self.coeffs, other.coeffs]),
            np.concatenate([self.freqs, other.freqs]),
            self.applied_steps,
        )


@dataclass(frozen=True)
class GeometricSeed:
    c: complex
    R: int

    def __post_init__(self):
        object.__setattr__(self, "c", check_disk(self.c))
        if self.R < 1:
            raise ValueError("truncation order R must be >= 1")


@dataclass(frozen=True)
class ToleranceBudget:
    """Split of a total error allowance between series tail and rounding."""

    eps_total: float
    eps_tail: float
    eps_round: float

    def __post_init__(self):
        if min(self.eps_total, self.eps_tail, self.eps_round) <= 0:
            raise ValueError("tolerances must be positive")
        if self.eps_tail + self.eps_round > self.eps_total * (1 + 1e-12):
            raise ValueError("eps_tail + eps_round must not exceed eps_total")

    @classmethod
    def from_parts(cls, eps_tail: float, eps_round: float) -> "ToleranceBudget":
        return cls(eps_tail + eps_round, eps_tail, eps_round)


@dataclass(frozen=True)
class GridSpec:
    """G equally spaced angles 2*pi*k/G, k = 0..G-1 (theta = 0 always included)."""

    G: int = 64
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.G < 1:
            raise ValueError("grid needs at least one point")
        object.__setattr__(self, "points", _frozen(2 * np.pi * np.arange(self.G) / self.G))


def seed_geometric(seed: GeometricSeed) -> FrequencySeries:
    """Geometric series sum_{r=0}^R c^r e^{i r theta}."""
    r = np.arange(seed.R + 1)
    return FrequencySeries(seed.c ** r, r, 0)


def evaluate(s: FrequencySeries, theta):
    """Sum the series at ``theta`` (scalar or array), ascending in r.

    The loop over terms is deliberate: it pins the summation order so results
    are bit-reproducible, which a BLAS dot product would not guarantee.
    """
    theta = np.asarray(theta, dtype=np.float64)
    total = np.zeros(theta.shape, dtype=np.complex128)
    for a, w in zip(s.coeffs, s.freqs):
        total = total + a * np.exp(1j * (float(w) * theta))
    return total[()] if total.ndim == 0 else total


def tail_bound(c: complex, R: int) -> float:
    """|c|^(R+1) / (1 - |c|), bounding everything past index R."""
    rho = abs(check_disk(c))
    return rho ** (R + 1) / (1 - rho)


def truncation_order(eps: float, K: float, rho: float, z_abs: float) -> int:
    """Smallest positive m0 with m0 > [ln(eps/2K) + ln(1 - rho z)] / [ln rho + ln z] - 1.

    Such m0 makes K (rho z)^(m0+1) / (1 - rho z) < eps / 2.
    """
    if eps <= 0 or K <= 0 or rho <= 0 or z_abs <= 0:
        raise ValueError("eps, K, rho and z_abs must be positive")
    q = rho * z_abs
    if q >= 1:
        raise ValueError("rho * z_abs must be < 1 for a finite truncation")
    bound = (math.log(eps / (2 * K)) + math.log1p(-q)) / (math.log(rho) + math.log(z_abs)) - 1
    m0 = max(1, math.floor(bound) + 1)
    # guard against the log formula landing one ulp on the wrong side
    while K * q ** (m0 + 1) / (1 - q) >= eps / 2:
        m0 += 1
    return m0


def choose_truncation(c: complex, eps_tail: float) -> int:
    """Smallest R >= 1 with tail_bound(c, R) <= eps_tail."""
    rho = abs(check_disk(c))
    if eps_tail <= 0:
        raise ValueError("eps_tail must be positive")
    if rho == 0:
        return 1
    # initial guess from logs, then settle exactly against tail_bound
    R = max(1, math.ceil(math.log(eps_tail * (1 - rho)) / math.log(rho)) - 1)
    while R > 1 and tail_bound(c, R - 1) <= eps_tail:
        R -= 1
    while tail_bound(c, R) > eps_tail:
        R += 1
    return R
