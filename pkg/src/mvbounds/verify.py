"""Closed-form claims checked against the brute-force oracle.

``verify_scarf`` replays the worst-case capped-mean problem on a grid that
contains the claimed extremal support, so the oracle must land on the
closed-form value to within rounding.  ``verify_dlp`` checks sharpness of
the call-payoff envelope by direct construction of the attaining two-point
distributions.  Both then hammer the claimed inequality with random
feasible distributions drawn from the vertex sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_forms import dlp_bounds, feasible_p_interval, scarf_min, two_point_from_p
from .errors import InvalidSpecError, OutOfRangeError
from .oracle import (
    OracleProblem,
    enumerate_vertices,
    expected_call,
    winsorized_expectation,
)
from .types import DiscreteDistribution, MomentSpec, Strike

__all__ = [
    "GAP_TOL",
    "VIOLATION_TOL",
    "VerificationReport",
    "verify_scarf",
    "verify_dlp",
]

#: A verification passes when |oracle - closed_form| stays within this.
GAP_TOL = 1e-9

#: ... and when no sampled distribution undershoots a claimed bound by more.
VIOLATION_TOL = 1e-9

#: Uniform grids span [lower_bound, mean + GRID_SPAN_SIGMAS * std_dev].
GRID_SPAN_SIGMAS = 10.0


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one closed-form-versus-brute-force comparison.

    ``gap`` is oracle_value - closed_form; ``worst_violation`` is the most
    negative slack any sampled distribution left against the claimed bound
    (None when no samples were requested).
    """

    closed_form: float
    oracle_value: float
    oracle_distribution: DiscreteDistribution
    gap: float
    random_trials: int
    worst_violation: float | None

    @property
    def passed(self) -> bool:
        ok_gap = abs(self.gap) <= GAP_TOL
        ok_violation = self.worst_violation is None or self.worst_violation >= -VIOLATION_TOL
        return ok_gap and ok_violation

    def as_dict(self) -> dict:
        support, probs = self.oracle_distribution.as_lists()
        return {
            "closed_form": self.closed_form,
            "oracle_value": self.oracle_value,
            "gap": self.gap,
            "random_trials": self.random_trials,
            "worst_violation": self.worst_violation,
            "oracle_distribution": {"support": support, "probs": probs},
            "passed": self.passed,
        }


def _uniform_grid(lo: float, hi: float, count: int, extra: list[float]) -> np.ndarray:
    grid = np.linspace(lo, hi, count)
    keep = [p for p in extra if lo <= p <= hi]
    return np.unique(np.concatenate([grid, np.asarray(keep, dtype=float)]))


def verify_scarf(
    spec: MomentSpec,
    c: Strike,
    grid_points: int = 200,
    trials: int = 100,
    seed: int = 0,
    augment: bool = True,
) -> VerificationReport:
    """Brute-force check of the worst-case capped-mean closed form.

    With ``augment`` the grid contains the strike and the claimed extremal
    support, so the oracle minimum must match the closed form to within
    ``GAP_TOL``.  Without it the oracle can only see a coarse grid and the
    gap measures how much the discretization gives up.
    """
    if spec.mean <= 0.0:
        raise InvalidSpecError(f"mean must be positive, got {spec.mean}")
    if c.value <= 0.0:
        raise OutOfRangeError(f"strike must be positive, got {c.value}")
    if grid_points < 3:
        raise OutOfRangeError(f"grid_points must be at least 3, got {grid_points}")
    if trials < 0:
        raise OutOfRangeError(f"trials must be nonnegative, got {trials}")

    solution = scarf_min(spec, c)
    closed = solution.min_winsorized
    extra = [c.value]
    if augment and solution.extremal is not None:
        extra += [solution.extremal.low, solution.extremal.high]
    grid = _uniform_grid(0.0, spec.mean + GRID_SPAN_SIGMAS * spec.std_dev, grid_points, extra)

    problem = OracleProblem(spec=spec, strike=c, grid=grid, lower_bound=0.0)
    vertices = enumerate_vertices(problem)
    objective = np.minimum(grid, c.value)
    row = int(np.argmin(vertices.values(objective)))
    argmin = vertices.distribution(row)
    oracle_value = winsorized_expectation(argmin, c)

    worst: float | None = None
    if trials > 0:
        rng = np.random.default_rng(seed)
        worst = math.inf
        for _ in range(trials):
            w = rng.standard_normal(grid.size)
            sample = vertices.distribution(int(np.argmin(vertices.values(w))))
            worst = min(worst, winsorized_expectation(sample, c) - closed)

    return VerificationReport(
        closed_form=closed,
        oracle_value=oracle_value,
        oracle_distribution=argmin,
        gap=oracle_value - closed,
        random_trials=trials,
        worst_violation=worst,
    )


def verify_dlp(
    spec: MomentSpec,
    c: Strike,
    p0_grid: int = 200,
    trials: int = 100,
    seed: int = 0,
    grid_points: int = 200,
) -> VerificationReport:
    """Sharpness and validity check of the call-payoff envelope.

    Sharpness: for ``p0_grid`` tail probabilities inside the feasible
    interval, the two-point distribution with that tail attains the upper
    bound; the report's closed_form/oracle_value pair is taken at the worst
    (largest |attained - bound|) tail probability.  Validity: ``trials``
    random feasible distributions must sit inside the envelope computed at
    their own tail probability.
    """
    if p0_grid < 1:
        raise OutOfRangeError(f"p0_grid must be positive, got {p0_grid}")
    if trials < 0:
        raise OutOfRangeError(f"trials must be nonnegative, got {trials}")
    if grid_points < 3:
        raise OutOfRangeError(f"grid_points must be at least 3, got {grid_points}")

    c_std = (c.value - spec.mean) / spec.std_dev
    interval = feasible_p_interval(c_std)
    worst_gap = -1.0
    closed = oracle_value = math.nan
    attaining: DiscreteDistribution | None = None
    for p in interval.interior_grid(p0_grid):
        p0 = 1.0 - p
        candidate = two_point_from_p(p).rescaled(spec.mean, spec.std_dev).as_discrete()
        attained = expected_call(candidate, c)
        upper = dlp_bounds(spec, c, p0).upper
        if abs(attained - upper) > worst_gap:
            worst_gap = abs(attained - upper)
            closed, oracle_value, attaining = upper, attained, candidate
    assert attaining is not None

    worst: float | None = None
    if trials > 0:
        lo = spec.mean - GRID_SPAN_SIGMAS * spec.std_dev
        hi = spec.mean + GRID_SPAN_SIGMAS * spec.std_dev
        grid = _uniform_grid(lo, hi, grid_points, [c.value])
        vertices = enumerate_vertices(
            OracleProblem(spec=spec, strike=c, grid=grid, lower_bound=None)
        )
        rng = np.random.default_rng(seed)
        worst = math.inf
        for _ in range(trials):
            w = rng.standard_normal(grid.size)
            sample = vertices.distribution(int(np.argmin(vertices.values(w))))
            bounds = dlp_bounds(spec, c, sample.prob_greater(c.value))
            call = expected_call(sample, c)
            worst = min(worst, call - bounds.lower, bounds.upper - call)

    return VerificationReport(
        closed_form=closed,
        oracle_value=oracle_value,
        oracle_distribution=attaining,
        gap=oracle_value - closed,
        random_trials=trials,
        worst_violation=worst,
    )
