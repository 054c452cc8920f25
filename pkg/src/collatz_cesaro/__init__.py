"""Numerical checks of the Cesaro-mean limit of the Collatz shift operator on geometric series."""

from .collatz_core import (
    CollatzOverflowError,
    IterationBudgetExceeded,
    OrbitBudgetExceeded,
    OrbitCache,
    OrbitRecord,
    collatz_iter,
    collatz_step,
    iterate_via_orbit,
    orbit_until_cycle,
)
from .series_engine import (
    FrequencySeries,
    GeometricSeed,
    GridSpec,
    ToleranceBudget,
    choose_truncation,
    evaluate,
    seed_geometric,
    tail_bound,
    truncation_order,
)
from .operator_engine import (
    ClosedFormId,
    DepthCapExceeded,
    adjudicate_closed_forms,
    apply_shift,
    apply_shift_n,
    closed_form_L1,
    closed_form_L2,
    cross_check,
    f0_closed,
    functional_step,
    iterate_functional,
)
from .cesaro_analysis import (
    CesaroReport,
    PeriodicSpec,
    cesaro_mean,
    convergence_report,
    g_limit,
    g_term,
    periodic_error_witness,
    periodic_mean_limit,
    periodic_running_mean,
    target_limit,
)

__version__ = "0.1.0"
