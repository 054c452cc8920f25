# The shift operator L1 computed three ways
#
# L1 keeps the coefficients of sum a_r e^{i r t} and moves each frequency r
# to C(r).  For the geometric seed f0 = 1/(1 - c e^{it}) we can:
#   1. shift the frequency list of a truncated series,
#   2. unroll the functional equation
#        L1 f(t) = (f(t/2) + f(t/2+pi) + e^{it} (f(3t) - f(3t+pi))) / 2
#      down to closed-form f0 evaluations (no truncation at all),
#   3. for n = 1, 2, use the rational closed forms (see 03_closed_forms.py).

import numpy as np

from collatz_cesaro import (
    GeometricSeed,
    GridSpec,
    apply_shift,
    apply_shift_n,
    choose_truncation,
    evaluate,
    iterate_functional,
    seed_geometric,
    tail_bound,
)

c = -0.4 + 0.2j
R = choose_truncation(c, 1e-10)
seed = seed_geometric(GeometricSeed(c, R))
print("R =", R, "tail bound", tail_bound(c, R))
print("frequencies after one shift:", apply_shift(seed).freqs[:21].tolist())

theta = GridSpec(64).points
for n in range(0, 9):
    coef = evaluate(apply_shift_n(seed, n), theta)
    func = iterate_functional(c, n, theta)
    print(f"n={n}: max |coefficient - functional| = {np.max(np.abs(coef - func)):.2e}")
