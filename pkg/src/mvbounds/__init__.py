"""Sharp mean-variance bounds on capped expectations and call payoffs.

Given only the mean and variance of a random variable (optionally plus a
tail probability or a nonnegativity constraint), the library computes the
exact worst/best-case values of E(X ∧ c) and E(X - c)+, the two-point
distributions attaining them, and Chebyshev-type tail bounds — together
with a brute-force moment-problem oracle that re-derives every closed form
from scratch for verification.
"""

from ._backend import active_backend, numba_enabled
from .closed_forms import (
    dlp_bounds,
    feasible_p_interval,
    l_value,
    lo_max,
    one_sided_tail_bounds,
    p_m,
    p_star,
    scarf_min,
    standardize,
    standardized_scarf_inf,
    threshold_strike,
    two_point_from_p,
    two_sided_tail_bound,
    winsorized_floor,
)
from .errors import (
    DegenerateStrikeError,
    IllConditionedError,
    InfeasibleError,
    InvalidSpecError,
    MVBoundsError,
    OutOfRangeError,
)
from .oracle import (
    OracleProblem,
    VertexSet,
    enumerate_vertices,
    expected_call,
    oracle_min,
    random_feasible,
    winsorized_expectation,
)
from .types import (
    Branch,
    DiscreteDistribution,
    DlpBounds,
    FeasibleInterval,
    MomentSpec,
    ScarfSolution,
    StandardizedProblem,
    Strike,
    TwoPointDistribution,
)
from .verify import VerificationReport, verify_dlp, verify_scarf

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "active_backend",
    "numba_enabled",
    "Branch",
    "DiscreteDistribution",
    "DlpBounds",
    "FeasibleInterval",
    "MomentSpec",
    "ScarfSolution",
    "StandardizedProblem",
    "Strike",
    "TwoPointDistribution",
    "MVBoundsError",
    "OutOfRangeError",
    "InvalidSpecError",
    "DegenerateStrikeError",
    "InfeasibleError",
    "IllConditionedError",
    "standardize",
    "two_point_from_p",
    "feasible_p_interval",
    "l_value",
    "p_star",
    "p_m",
    "dlp_bounds",
    "one_sided_tail_bounds",
    "two_sided_tail_bound",
    "standardized_scarf_inf",
    "scarf_min",
    "lo_max",
    "winsorized_floor",
    "threshold_strike",
    "OracleProblem",
    "VertexSet",
    "winsorized_expectation",
    "expected_call",
    "enumerate_vertices",
    "oracle_min",
    "random_feasible",
    "VerificationReport",
    "verify_scarf",
    "verify_dlp",
]
