# Running means of eventually periodic sequences
#
# For a_1..a_{K-1} followed by a repeating block of length P, the mean of the
# first n terms is (W + q V + partial) / n with W the preamble sum, V the block
# sum and q = floor((n-K+1)/P).  That is O(K + P) work for any n, and the
# means converge to V / P at rate witness / n.

import numpy as np

from collatz_cesaro import PeriodicSpec, periodic_error_witness, periodic_mean_limit, periodic_running_mean
from collatz_cesaro.cesaro_analysis import brute_force_mean

spec = PeriodicSpec(preamble=[5, -2, 7j], cycle=[1, 2, 3, 1j])
print("limit", periodic_mean_limit(spec), "witness", periodic_error_witness(spec))
for n in (1, 3, 4, 10, 1000, 10**6):
    fast = periodic_running_mean(spec, n)
    line = f"n={n:>7}  mean {fast:.6f}  n*err {n * abs(fast - periodic_mean_limit(spec)):.4f}"
    if n <= 1000:
        line += f"  brute-force diff {abs(fast - brute_force_mean(spec, n)):.1e}"
    print(line)

# A cancelling preamble shows why the error constant depends on K, not just |W|
spec = PeriodicSpec([1, -1] * 10, [1])
print("cancelling preamble: n*err at n=100 =",
      100 * abs(periodic_running_mean(spec, 100) - 1), "witness", periodic_error_witness(spec))
