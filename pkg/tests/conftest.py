"""Independent oracles shared by the test modules.

Nothing here imports the package: these are the naive reference
computations the fast paths are checked against.
"""

import cmath
import math

import pytest

_acceptance_lines = []


def naive_step(n):
    return n // 2 if n % 2 == 0 else 3 * n + 1


def naive_orbit(m, steps):
    out = [m]
    for _ in range(steps):
        out.append(naive_step(out[-1]))
    return out


def naive_series(c, n, theta, R):
    """sum_{r=0}^R c^r exp(i C^n(r) theta) by stepping each index separately."""
    total = 0j
    for r in range(R + 1):
        w = r
        for _ in range(n):
            w = naive_step(w)
        total += c**r * cmath.exp(1j * w * theta)
    return total


def naive_g(m, n, theta):
    w, total = m, 0j
    for _ in range(n):
        w = naive_step(w)
        total += cmath.exp(1j * w * theta)
    return total / n


def truncation_rhs(eps, K, rho, z):
    return (math.log(eps / (2 * K)) + math.log(1 - rho * z)) / (math.log(rho) + math.log(z)) - 1


@pytest.fixture
def report_criterion():
    def record(number, title, passed, detail=""):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _acceptance_lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
