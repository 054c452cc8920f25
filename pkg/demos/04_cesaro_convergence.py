# Cesaro means of the iterates and their predicted limit
#
# M_n = (1/n) sum_{j=1}^n L^j f0.  If every orbit reaches the 1 -> 4 -> 2
# cycle, M_n(theta) -> 1 + (e^{i theta} + e^{2i theta} + e^{4i theta})/3 * c/(1-c).
# The distance should fall like 1/n, so n * distance stays flat.

from collatz_cesaro import GridSpec, ToleranceBudget, convergence_report

for c in (0.5, 0.5j, -0.4 + 0.2j, 0.9):
    rep = convergence_report(c, GridSpec(64), [10, 100, 1000, 10000],
                             ToleranceBudget.from_parts(1e-10, 1e-12))
    print(f"c={c}  R={rep.R}")
    for (n, d), s in zip(rep.rows(), rep.scaled()):
        print(f"   n={n:>6}  sup distance {d:.3e}   n*distance {s:.4f}")
