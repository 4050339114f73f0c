"""Independent ground truth for the map-counting engine.

Everything in this subpackage is computed from first principles of the
Gaussian symmetric-matrix ensemble (Wick pairings with exact integer
bookkeeping) rather than from the recursive genus solver, so agreement
between the two sides is a genuine cross-check and not a tautology.
"""

from .wick import wick_moment, wick_loop_histogram, active_backend, MAX_HALF_EDGES
from .graded import GradedSeries3, zN_graded, log_zN, map_series_oracle, genus_split
from .verify import (
    mehta_ratio,
    verify_bkp,
    verify_virasoro,
    verify_y_reductions,
)
from .pfaffian import (
    AntisymMatrix,
    OddDimension,
    pfaffian,
    det_exact,
    random_antisym,
    pfaffian_square_check,
    pfaffian_quadratic_identity,
    pfaffian_derivative_rule,
)

__all__ = [
    "wick_moment",
    "wick_loop_histogram",
    "active_backend",
    "MAX_HALF_EDGES",
    "GradedSeries3",
    "zN_graded",
    "log_zN",
    "map_series_oracle",
    "genus_split",
    "mehta_ratio",
    "verify_bkp",
    "verify_virasoro",
    "verify_y_reductions",
    "AntisymMatrix",
    "OddDimension",
    "pfaffian",
    "det_exact",
    "random_antisym",
    "pfaffian_square_check",
    "pfaffian_quadratic_identity",
    "pfaffian_derivative_rule",
]
