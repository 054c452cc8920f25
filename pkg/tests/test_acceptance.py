"""Exit criteria for the build, one test per criterion.

Run ``pytest tests/test_acceptance.py -v`` and read the "acceptance
criteria" section of the terminal summary.
"""

import time

import numpy as np
import pytest

from collatz_cesaro.cesaro_analysis import (
    PeriodicSpec,
    brute_force_mean,
    convergence_report,
    g_limit,
    g_term,
    periodic_error_witness,
    periodic_mean_limit,
    periodic_running_mean,
    target_limit,
)
from collatz_cesaro.cli import main
from collatz_cesaro.operator_engine import (
    adjudicate_closed_forms,
    apply_shift,
    apply_shift_n,
    iterate_functional,
)
from collatz_cesaro.series_engine import (
    GeometricSeed,
    GridSpec,
    ToleranceBudget,
    choose_truncation,
    evaluate,
    seed_geometric,
    tail_bound,
    truncation_order,
)

from conftest import truncation_rhs

C_SET = (0.3, 0.5, 0.5j, -0.4 + 0.2j)
GRID = GridSpec(64)
EQ5_FREQS = [0, 4, 1, 10, 2, 16, 3, 22, 4, 28, 5, 34, 6, 40, 7, 46, 8, 52, 9, 58, 10]


def test_criterion_1_shift_frequency_table(report_criterion):
    seed = seed_geometric(GeometricSeed(0.5, 20))
    apply_shift(seed)  # warm-up
    t0 = time.perf_counter()
    shifted = apply_shift(seed)
    elapsed = time.perf_counter() - t0
    ok = shifted.freqs.tolist() == EQ5_FREQS and elapsed < 1e-3
    report_criterion(1, "one shift of the geometric seed gives the expected frequency table", ok,
                     f"{elapsed * 1e6:.0f} us")
    assert ok


def test_criterion_2_dual_path_equivalence(report_criterion):
    t0 = time.perf_counter()
    worst_excess = -np.inf
    for c in C_SET:
        R = choose_truncation(c, 1e-10)
        allowed = tail_bound(c, R) + 1e-9
        seed = seed_geometric(GeometricSeed(c, R))
        for n in range(9):
            coef = evaluate(apply_shift_n(seed, n), GRID.points)
            func = iterate_functional(c, n, GRID.points)
            worst_excess = max(worst_excess, float(np.max(np.abs(coef - func))) - allowed)
    elapsed = time.perf_counter() - t0
    ok = worst_excess <= 0 and elapsed < 120
    report_criterion(2, "coefficient path == functional path within tail + 1e-9", ok,
                     f"worst margin {worst_excess:.2e}, {elapsed:.1f} s")
    assert ok


def test_criterion_3_closed_form_adjudication(report_criterion):
    t0 = time.perf_counter()
    checks = adjudicate_closed_forms(C_SET, GRID, tol=1e-9, eps_tail=1e-10)
    elapsed = time.perf_counter() - t0
    readings = {ch.reading for ch in checks}
    worst = max(max(ch.dev_minus_one, ch.dev_coefficient) for ch in checks)
    ok = all(ch.passed for ch in checks) and readings == {"closed form = L^n(f0) - 1"} and elapsed < 60
    report_criterion(3, "rational L^1/L^2 closed forms equal L^n(f0) - 1", ok,
                     f"max dev {worst:.2e}; reading: {', '.join(sorted(readings))}; {elapsed:.1f} s")
    assert ok


def test_criterion_4_periodic_mean_algorithm(report_criterion):
    rng = np.random.default_rng(20231011)
    t0 = time.perf_counter()
    worst_exact, worst_ratio = 0.0, 0.0
    for _ in range(1000):
        L = int(rng.integers(0, 20))
        P = int(rng.integers(1, 21))
        draw = lambda k: rng.uniform(-1, 1, k) + 1j * rng.uniform(-1, 1, k)  # noqa: E731
        spec = PeriodicSpec(draw(L), draw(P))
        n = int(rng.integers(1, 10**4 + 1))
        fast = periodic_running_mean(spec, n)
        worst_exact = max(worst_exact, abs(fast - brute_force_mean(spec, n)))
        witness = float(periodic_error_witness(spec))
        scaled = n * abs(fast - periodic_mean_limit(spec))
        worst_ratio = max(worst_ratio, scaled / witness if witness > 0 else scaled)
    elapsed = time.perf_counter() - t0
    ok = worst_exact <= 1e-12 and worst_ratio <= 1 + 1e-9 and elapsed < 30
    report_criterion(4, "fast periodic mean == brute force; n*error within witness", ok,
                     f"max diff {worst_exact:.1e}, max n*err/witness {worst_ratio:.3f}, {elapsed:.1f} s")
    assert ok


def test_criterion_5_truncation_order(report_criterion):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(1000):
        eps = 10 ** rng.uniform(-14, 1)
        K = 10 ** rng.uniform(-3, 3)
        rho = 10 ** rng.uniform(-1.5, 1.5)
        z = rng.uniform(1e-3, 1 - 1e-3) / rho
        m0 = truncation_order(eps, K, rho, z)
        q = rho * z
        guarantee = K * q ** (m0 + 1) / (1 - q) < eps / 2
        minimal = (
            m0 == 1
            or not (m0 - 1 > truncation_rhs(eps, K, rho, z))
            or K * q**m0 / (1 - q) >= eps / 2  # exact tie: float rhs may land either side
        )
        failures += not (guarantee and minimal)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 5
    report_criterion(5, "truncation order meets the tail guarantee and is minimal", ok,
                     f"{failures} failures / 1000, {elapsed:.2f} s")
    assert ok


def test_criterion_6_period_three_limit(report_criterion):
    theta = GRID.points
    lim = g_limit(theta)
    t0 = time.perf_counter()
    worst_err, worst_band = 0.0, 0.0
    band_ok = True
    over = []
    for m in range(1, 101):
        e3 = 1e3 * np.abs(g_term(m, 10**3, theta) - lim)
        e4 = 1e4 * np.abs(g_term(m, 10**4, theta) - lim)
        worst_err = max(worst_err, float(np.max(e4)) / 1e4)
        if np.max(e4) / 1e4 > 1e-2:
            over.append(m)
        hi, lo = np.maximum(e3, e4), np.minimum(e3, e4)
        # points where both are pure rounding (theta = 0) are excluded by the 1e-9 floor
        band_ok &= bool(np.all(hi <= 2 * lo + 1e-9))
        nz = lo > 1e-9
        if np.any(nz):
            worst_band = max(worst_band, float(np.max(hi[nz] / lo[nz])))
    elapsed = time.perf_counter() - t0
    ok = worst_err <= 1e-2 and band_ok and elapsed < 60
    report_criterion(6, "g_{n,m} -> period-3 average for m <= 100", ok,
                     f"max err at 1e4 {worst_err:.2e} (starts over 1e-2: {over or 'none'}), "
                     f"band ok {band_ok}, max band ratio {worst_band:.3f}, {elapsed:.1f} s")
    assert ok


def test_criterion_7_cesaro_limit(report_criterion):
    c = 0.5
    t0 = time.perf_counter()
    rep = convergence_report(c, GRID, [10**2, 10**3, 10**4],
                             ToleranceBudget.from_parts(1e-10, 1e-12), keep_points=True)
    elapsed = time.perf_counter() - t0
    # independent restatement of the predicted limit
    th = GRID.points
    explicit = 1 + (np.exp(1j * th) + np.exp(2j * th) + np.exp(4j * th)) / 3 * c / (1 - c)
    assert np.max(np.abs(explicit - target_limit(c, th))) < 1e-15
    zero_ok = all(p[0] <= tail_bound(c, rep.R) + 1e-12 for p in rep.per_point)
    scaled = rep.scaled()
    ok = (
        rep.is_decreasing(strict=True)
        and rep.final_distance < 0.01
        and max(scaled) <= 2 * min(scaled)
        and zero_ok
        and elapsed < 120
    )
    report_criterion(7, "sup |M_n - limit| decays like 1/n", ok,
                     "sup " + ", ".join(f"{d:.3e}" for d in rep.sup_distance)
                     + "; n*sup " + ", ".join(f"{s:.4f}" for s in scaled)
                     + f"; theta=0 exact: {zero_ok}; {elapsed:.1f} s")
    assert ok


def test_criterion_8_deterministic_output(report_criterion, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    codes = [
        main(["converge", "--c", "0.5", "--schedule", "100,1000,10000", "-o", str(p)])
        for p in paths
    ]
    ok = codes == [0, 0] and paths[0].read_bytes() == paths[1].read_bytes()
    report_criterion(8, "converge output is byte-identical across runs", ok)
    assert ok
