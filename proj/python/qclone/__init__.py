"""Lower bounds on the noise of quantum copying machines."""

from ._qclone import (
    BoundViolation,
    ErrorPair,
    MachineResult,
    Peak,
    SuiteReport,
    __version__,
    analyze_errors,
    evaluate_bound,
    feasible,
    maximize_over_z,
    optimize_machine,
    region_feasible,
    rhs_general,
    run_cli,
    run_suite,
    sample_pair,
    sum_min,
    sum_min_peak,
    weighted_sum_min,
    x2_min_perfect,
    x_equal_min_exact,
    x_equal_min_simplified,
)

__all__ = [
    "BoundViolation",
    "ErrorPair",
    "MachineResult",
    "Peak",
    "SuiteReport",
    "__version__",
    "analyze_errors",
    "evaluate_bound",
    "feasible",
    "maximize_over_z",
    "optimize_machine",
    "region_feasible",
    "rhs_general",
    "run_cli",
    "run_suite",
    "sample_pair",
    "sum_min",
    "sum_min_peak",
    "weighted_sum_min",
    "x2_min_perfect",
    "x_equal_min_exact",
    "x_equal_min_simplified",
]
