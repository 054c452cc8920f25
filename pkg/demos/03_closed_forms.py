# The rational closed forms for L^1 f0 and L^2 f0
#
# Both vanish at c = 0, whereas L^n f0 always contains the constant term 1
# (frequency 0 is fixed by C).  Comparing against both readings shows which
# one the closed forms actually represent.

from collatz_cesaro import GridSpec, adjudicate_closed_forms

for ch in adjudicate_closed_forms([0.3, 0.5, 0.5j, -0.4 + 0.2j], GridSpec(64)):
    print(
        f"{ch.which.value} c={ch.c}: |closed - (L f0 - 1)| = {ch.dev_minus_one:.1e}, "
        f"|closed - L f0| = {ch.dev_literal:.3f}  -> {ch.reading}"
    )
