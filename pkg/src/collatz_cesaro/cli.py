"""Command-line entry point.

Exit codes: 0 success, 1 usage, 2 orbit budget / overflow, 3 criteria failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import cesaro_analysis as ca
from .collatz_core import (
    DEFAULT_CACHE,
    DEFAULT_ITER_BUDGET,
    CollatzOverflowError,
    IterationBudgetExceeded,
    OrbitBudgetExceeded,
    OrbitCache,
    orbit_until_cycle,
)
from .operator_engine import DEFAULT_DEPTH_CAP, DepthCapExceeded, adjudicate_closed_forms
from .series_engine import GridSpec, ToleranceBudget

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_CRITERIA = 0, 1, 2, 3

DEFAULT_CS = ("0.3", "0.5i", "-0.4+0.2i")
CSV_HEADER = ("n", "sup_distance", "R", "G", "c_re", "c_im")

_COMPLEX_RE = re.compile(r"^[+-]?[0-9.eE+-]*i?$")


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``RE+IMi`` notation, e.g. ``-0.4+0.2i``, ``0.5i``, ``0.3``."""
    s = text.strip().replace(" ", "")
    if not s or not _COMPLEX_RE.match(s):
        raise UsageError(f"cannot parse complex number {text!r} (expected RE+IMi)")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r} (expected RE+IMi)") from None


def format_complex(c: complex) -> str:
    return f"{c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i"


def _disk(text: str) -> complex:
    c = parse_complex(text)
    if not abs(c) < 1:
        raise UsageError(f"|c| must be < 1, got {text} with |c| = {abs(c)}")
    return c


def _schedule(text: str) -> List[int]:
    try:
        sched = [int(float(v)) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad schedule {text!r}") from None
    if not sched or sched[0] < 1 or any(b <= a for a, b in zip(sched, sched[1:])):
        raise UsageError("schedule must be non-empty, positive and strictly ascending")
    return sched


@dataclass
class RunConfig:
    c: complex = 0.5
    G: int = 64
    n_schedule: List[int] = field(default_factory=lambda: [100, 1000, 10000])
    eps_tail: float = 1e-10
    eps_round: float = 1e-12
    depth_cap: int = DEFAULT_DEPTH_CAP
    orbit_budget: int = DEFAULT_ITER_BUDGET
    cache_path: Optional[str] = None
    output_format: str = "csv"
    band_factor: float = 2.0
    final_tol: float = 0.01

    def validate(self) -> None:
        if not abs(self.c) < 1:
            raise UsageError("|c| must be < 1")
        if self.G < 1:
            raise UsageError("grid must have at least one point")
        if self.eps_tail <= 0 or self.eps_round <= 0:
            raise UsageError("eps values must be positive")
        if self.output_format not in ("csv", "json"):
            raise UsageError("format must be csv or json")


def report_to_csv(report: ca.CesaroReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    c = complex(report.c)
    for n, d in report.rows():
        w.writerow([n, repr(d), report.R, report.G, repr(c.real), repr(c.imag)])
    return buf.getvalue()


def report_to_json(report: ca.CesaroReport, config: RunConfig) -> str:
    c = complex(report.c)
    payload = {
        "config": {
            "c_re": c.real,
            "c_im": c.imag,
            "G": config.G,
            "n_schedule": report.n_schedule,
            "eps_tail": config.eps_tail,
            "eps_round": config.eps_round,
            "orbit_budget": config.orbit_budget,
        },
        "rows": [
            {"n": n, "sup_distance": d, "R": report.R, "G": report.G, "c_re": c.real, "c_im": c.imag}
            for n, d in report.rows()
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _cache(path: Optional[str]) -> OrbitCache:
    if path is None:
        return DEFAULT_CACHE
    cache = OrbitCache()
    cache.load(path)
    return cache


def cmd_orbit(args, out) -> int:
    if args.m < 1:
        raise UsageError("orbit start must be >= 1")
    cache = _cache(args.cache)
    rec = orbit_until_cycle(args.m, args.budget, cache)
    print(f"start: {rec.start}", file=out)
    print("trajectory: " + ",".join(map(str, rec.prefix)), file=out)
    print(f"preperiod: {rec.preperiod_K}", file=out)
    print(f"max_excursion: {rec.max_excursion}", file=out)
    print("cycle: " + ",".join(map(str, rec.cycle)), file=out)
    if args.cache:
        cache.save(args.cache)
    return EXIT_OK


def cmd_verify_closed_forms(args, out) -> int:
    cs = [_disk(v) for v in (args.c or DEFAULT_CS)]
    checks = adjudicate_closed_forms(cs, GridSpec(args.grid), tol=args.tol, eps_tail=args.eps_tail)
    print("form,c,max|closed-(L^n f0 - 1)|,max|closed-L^n f0|,max|closed-(series - 1)|,reading", file=out)
    for ch in checks:
        print(
            f"{ch.which.value},{format_complex(ch.c)},{ch.dev_minus_one:.3e},"
            f"{ch.dev_literal:.3e},{ch.dev_coefficient:.3e},{ch.reading}",
            file=out,
        )
    ok = all(ch.passed for ch in checks)
    print(
        ("PASS" if ok else "FAIL")
        + f": rational closed forms equal L^n(f0) - 1 within {args.tol:g}",
        file=out,
    )
    return EXIT_OK if ok else EXIT_CRITERIA


def run_converge(config: RunConfig):
    """Run a convergence study; returns (report, criteria_ok)."""
    config.validate()
    cache = _cache(config.cache_path)
    grid = GridSpec(config.G)
    report = ca.convergence_report(
        config.c,
        grid,
        config.n_schedule,
        ToleranceBudget.from_parts(config.eps_tail, config.eps_round),
        orbit_budget=config.orbit_budget,
        cache=cache,
    )
    if config.cache_path:
        cache.save(config.cache_path)
    ok = (
        report.is_decreasing(strict=False)
        and report.within_ratio_band(config.band_factor)
        and report.final_distance < config.final_tol
    )
    return report, ok


def cmd_converge(args, out) -> int:
    config = RunConfig(
        c=_disk(args.c[-1] if args.c else "0.5"),
        G=args.grid,
        n_schedule=_schedule(args.schedule),
        eps_tail=args.eps_tail,
        eps_round=args.eps_round,
        orbit_budget=args.budget,
        cache_path=args.cache,
        output_format=args.format,
        final_tol=args.final_tol,
    )
    report, ok = run_converge(config)
    text = report_to_csv(report) if config.output_format == "csv" else report_to_json(report, config)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if not ok:
        print(
            f"criteria failed: decreasing={report.is_decreasing(strict=False)} "
            f"band={report.within_ratio_band(config.band_factor)} "
            f"final={report.final_distance:.3e}",
            file=sys.stderr,
        )
    return EXIT_OK if ok else EXIT_CRITERIA


def random_periodic_spec(rng: np.random.Generator, max_pre: int = 19, max_period: int = 20):
    L = int(rng.integers(0, max_pre + 1))
    P = int(rng.integers(1, max_period + 1))
    draw = lambda k: rng.uniform(-1, 1, k) + 1j * rng.uniform(-1, 1, k)  # noqa: E731
    return ca.PeriodicSpec(draw(L), draw(P))


def cmd_lemma_check(args, out) -> int:
    if args.count < 1:
        raise UsageError("count must be >= 1")
    rng = np.random.default_rng(args.rng_seed)
    failures = []
    worst = 0.0
    for k in range(args.count):
        spec = random_periodic_spec(rng)
        n = int(rng.integers(1, args.max_n + 1))
        err = abs(ca.periodic_running_mean(spec, n) - ca.brute_force_mean(spec, n))
        worst = max(worst, err)
        if err > 1e-12:
            failures.append((k, n, spec, err))
    for k, n, spec, err in failures:
        print(
            f"MISMATCH spec#{k} n={n} err={err:.3e} preamble={spec.preamble.tolist()} "
            f"cycle={spec.cycle.tolist()}",
            file=out,
        )
    status = "PASS" if not failures else "FAIL"
    print(f"{status}: {args.count} specs, rng seed {args.rng_seed}, max |fast - brute| = {worst:.3e}", file=out)
    return EXIT_OK if not failures else EXIT_CRITERIA


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="collatz-cesaro", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_ITER_BUDGET, help="orbit step budget")
        sp.add_argument("--cache", default=None, help="orbit cache file (created if missing)")

    sp = sub.add_parser("orbit", help="trajectory of one start value")
    sp.add_argument("m", type=int)
    common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("verify-closed-forms", help="adjudicate the rational L^1/L^2 closed forms")
    sp.add_argument("--c", action="append", help="RE+IMi; repeatable")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--eps-tail", type=float, default=1e-10)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_verify_closed_forms)

    sp = sub.add_parser("converge", help="sup-grid distance of M_n from the predicted limit")
    sp.add_argument("--c", action="append", help="RE+IMi (last one wins)")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--schedule", default="100,1000,10000")
    sp.add_argument("--eps-tail", type=float, default=1e-10)
    sp.add_argument("--eps-round", type=float, default=1e-12)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--final-tol", type=float, default=0.01)
    sp.add_argument("-o", "--output", default=None, help="write report here instead of stdout")
    common(sp)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("lemma-check", help="fast periodic mean vs brute force on random specs")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--rng-seed", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=10_000)
    sp.set_defaults(func=cmd_lemma_check)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OrbitBudgetExceeded, IterationBudgetExceeded, CollatzOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DepthCapExceeded as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
