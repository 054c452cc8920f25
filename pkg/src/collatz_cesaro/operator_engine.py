"""Three independent routes to the shift operator L1 and its iterates.

* coefficient reindexing: :func:`apply_shift` pushes every frequency through C;
* the functional equation: :func:`functional_step` / :func:`iterate_functional`
  expand L^n(f0) into 4^n evaluations of the closed geometric sum;
* the rational closed forms for L^1 and L^2 of the geometric seed.

The rational closed forms vanish at c = 0 while L^n(f0) is 1 there; they
are evaluated verbatim and compared against ``L^n(f0) - 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, List

import numpy as np

from .collatz_core import collatz_step_array
from .series_engine import (
    FrequencySeries,
    GeometricSeed,
    GridSpec,
    ToleranceBudget,
    check_disk,
    choose_truncation,
    evaluate,
    seed_geometric,
    tail_bound,
)

DEFAULT_DEPTH_CAP = 12
# leaves expanded in one vectorised block before recursing on children
_BLOCK_LEAVES = 1 << 21


class DepthCapExceeded(ValueError):
    """The functional recursion would need more than 4**depth_cap leaves."""


class ClosedFormId(enum.Enum):
    F0 = "f0"
    L1_CLOSED = "L1"
    L2_CLOSED = "L2"


def apply_shift(s: FrequencySeries) -> FrequencySeries:
    """L1 on a term list: coefficients stay, each frequency w becomes C(w)."""
    return FrequencySeries(s.coeffs, collatz_step_array(s.freqs), s.applied_steps + 1)


def apply_shift_n(s: FrequencySeries, n: int) -> FrequencySeries:
    for _ in range(n):
        s = apply_shift(s)
    return s


def f0_closed(c: complex, t):
    """1 / (1 - c e^{it})."""
    c = check_disk(c)
    return 1.0 / (1.0 - c * np.exp(1j * np.asarray(t, dtype=np.float64)))


def functional_step(g: Callable, t):
    """(1/2) [g(t/2) + g(t/2 + pi) + e^{it} (g(3t) - g(3t + pi))]."""
    t = np.asarray(t, dtype=np.float64)
    even = g(t / 2) + g(t / 2 + np.pi)
    odd = g(3 * t) - g(3 * t + np.pi)
    return 0.5 * (even + np.exp(1j * t) * odd)


def _combine(args: np.ndarray, children: np.ndarray) -> np.ndarray:
    # children blocks [g(t/2), g(t/2+pi), g(3t), g(3t+pi)] along the last axis
    L = args.shape[-1]
    b0, b1, b2, b3 = (children[..., k * L:(k + 1) * L] for k in range(4))
    return 0.5 * ((b0 + b1) + np.exp(1j * args) * (b2 - b3))


def _expand(c: complex, args: np.ndarray, levels: int) -> np.ndarray:
    """L^levels(f0) at every entry of ``args`` (shape (points, leaves))."""
    # expand breadth-first while the block fits, then fold back up the tree
    stack = []
    while levels > 0 and args.size * 4 <= _BLOCK_LEAVES:
        stack.append(args)
        args = np.concatenate([args / 2, args / 2 + np.pi, 3 * args, 3 * args + np.pi], axis=-1)
        levels -= 1
    if levels == 0:
        vals = f0_closed(c, args)
    else:
        # too large for one block: recurse on each child separately
        vals = np.concatenate(
            [
                _expand(c, args / 2, levels - 1),
                _expand(c, args / 2 + np.pi, levels - 1),
                _expand(c, 3 * args, levels - 1),
                _expand(c, 3 * args + np.pi, levels - 1),
            ],
            axis=-1,
        )
        vals = _combine(args, vals)
    while stack:
        vals = _combine(stack.pop(), vals)
    return vals


def iterate_functional(c: complex, n: int, t, depth_cap: int = DEFAULT_DEPTH_CAP):
    """L^n(f0) at ``t`` by unrolling the functional equation down to f0 leaves.

    No truncation is involved, so this is the untruncated f_n(t) up to rounding.
    Cost is 4**n leaf evaluations per point, hence the depth cap.
    """
    c = check_disk(c)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > depth_cap:
        raise DepthCapExceeded(
            f"n={n} exceeds depth cap {depth_cap} (4**{n} = {4**n} leaf evaluations); "
            "use the coefficient path"
        )
    t = np.asarray(t, dtype=np.float64)
    flat = t.reshape(-1, 1)
    out = _expand(c, flat, n).reshape(t.shape)
    return out[()] if out.ndim == 0 else out


def closed_form_L1(c: complex, t):
    """The rational closed form for L^1 of the geometric seed."""
    c = check_disk(c)
    e = np.exp(1j * np.asarray(t, dtype=np.float64))
    num = c * e * (-(c**3) * e**6 - c**2 * e**4 + c + e**3)
    den = c**4 * e**7 - c**2 * e * (1 + e**5) + 1
    return num / den


def closed_form_L2(c: complex, t):
    """The rational closed form for L^2 of the geometric seed."""
    c = check_disk(c)
    e = np.exp(1j * np.asarray(t, dtype=np.float64))
    num = c * e * (
        -(c**7) * e**6 - c**6 * e**5 - c**5 * e**4 - c**4 * e**2
        + c**3 + c**2 * e**4 + c * e**3 + e
    )
    den = c**8 * e**7 - c**4 * e * (1 + e**5) + 1
    return num / den


CLOSED_FORMS = {
    ClosedFormId.F0: (0, f0_closed),
    ClosedFormId.L1_CLOSED: (1, closed_form_L1),
    ClosedFormId.L2_CLOSED: (2, closed_form_L2),
}


def closed_form(which: ClosedFormId, c: complex, t):
    return CLOSED_FORMS[which][1](c, t)


def coefficient_path(c: complex, n: int, theta, R: int):
    """f_n(theta) truncated at order R via n frequency reindexings."""
    return evaluate(apply_shift_n(seed_geometric(GeometricSeed(c, R)), n), theta)


@dataclass(frozen=True)
class CrossCheckReport:
    c: complex
    n: int
    R: int
    G: int
    max_diff: float
    tail: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_diff <= self.threshold


def cross_check(
    c: complex,
    n: int,
    grid: GridSpec,
    budget: ToleranceBudget,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> CrossCheckReport:
    """Max over the grid of |coefficient path - functional path|."""
    c = check_disk(c)
    if n > depth_cap:
        raise DepthCapExceeded(f"n={n} exceeds depth cap {depth_cap}")
    R = choose_truncation(c, budget.eps_tail)
    coef = coefficient_path(c, n, grid.points, R)
    func = iterate_functional(c, n, grid.points, depth_cap)
    return CrossCheckReport(
        c=c,
        n=n,
        R=R,
        G=grid.G,
        max_diff=float(np.max(np.abs(coef - func))),
        tail=tail_bound(c, R),
        threshold=budget.eps_tail + budget.eps_round,
    )


@dataclass(frozen=True)
class ClosedFormCheck:
    """Deviation of a closed form from L^n(f0) read two ways."""

    which: ClosedFormId
    c: complex
    G: int
    dev_minus_one: float  # max |closed - (L^n f0 - 1)|
    dev_literal: float  # max |closed - L^n f0|
    dev_coefficient: float  # max |closed - (truncated series - 1)|
    tol: float

    @property
    def passed(self) -> bool:
        return self.dev_minus_one <= self.tol and self.dev_coefficient <= self.tol

    @property
    def reading(self) -> str:
        if self.dev_minus_one <= self.tol and self.dev_literal > self.tol:
            return "closed form = L^n(f0) - 1"
        if self.dev_literal <= self.tol and self.dev_minus_one > self.tol:
            return "closed form = L^n(f0)"
        if self.dev_literal <= self.tol:
            return "indistinguishable at this c"
        return "matches neither reading"


def adjudicate_closed_forms(
    cs: Iterable[complex],
    grid: GridSpec,
    tol: float = 1e-9,
    eps_tail: float = 1e-10,
) -> List[ClosedFormCheck]:
    """Compare the rational L^1 / L^2 closed forms with both evaluation paths."""
    checks = []
    theta = grid.points
    for c in cs:
        c = check_disk(c)
        R = choose_truncation(c, eps_tail)
        for which in (ClosedFormId.L1_CLOSED, ClosedFormId.L2_CLOSED):
            n, fn = CLOSED_FORMS[which]
            closed = fn(c, theta)
            func = iterate_functional(c, n, theta)
            coef = coefficient_path(c, n, theta, R)
            checks.append(
                ClosedFormCheck(
                    which=which,
                    c=c,
                    G=grid.G,
                    dev_minus_one=float(np.max(np.abs(closed - (func - 1)))),
                    dev_literal=float(np.max(np.abs(closed - func))),
                    dev_coefficient=float(np.max(np.abs(closed - (coef - 1)))),
                    tol=tol,
                )
            )
    return checks
