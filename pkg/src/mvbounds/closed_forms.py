"""Closed-form bounds for distributions known only through mean and variance.

Everything here reduces, via the affine map x -> mean + std_dev * x, to the
mean-0 variance-1 sphere, where each sharp bound is attained by a two-point
distribution.  The central objects:

* ``two_point_from_p`` — the unique standardized two-point distribution with
  P(X = low) = p: low = -sqrt((1-p)/p), high = sqrt(p/(1-p)).
* ``l_value`` — the capped mean of that distribution when the cap separates
  its support points: L(p, c) = -sqrt(p(1-p)) + c(1-p).  Minimizing L over
  the feasible tail parameters solves the worst-case capped-mean problem.
* ``dlp_bounds`` — the two-sided envelope on E(X - c)+ available when the
  tail probability P(X > c) is known on top of the first two moments.
* ``scarf_min`` / ``lo_max`` — the worst-case capped mean E(X ∧ c) and the
  best-case call payoff E(X - c)+ over nonnegative variables, two branches
  split at strike (mean² + var) / (2·mean).
"""

from __future__ import annotations

import math

from .errors import DegenerateStrikeError, InvalidSpecError, OutOfRangeError
from .types import (
    Branch,
    DlpBounds,
    FeasibleInterval,
    MomentSpec,
    ScarfSolution,
    StandardizedProblem,
    Strike,
    TwoPointDistribution,
)

__all__ = [
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
]


def standardize(c: Strike, spec: MomentSpec) -> StandardizedProblem:
    """Map a raw strike to the mean-0 variance-1 scale.

    Returns the dimensionless strike (c - mean)/std_dev together with the
    image -mean/std_dev of the support floor 0 under the same map.
    """
    return StandardizedProblem(
        strike_std=(c.value - spec.mean) / spec.std_dev,
        lower_bound_std=-spec.mean / spec.std_dev,
    )


def two_point_from_p(p: float) -> TwoPointDistribution:
    """Standardized two-point distribution with probability ``p`` on the low value.

    The two support points are pinned by the mean-0 and variance-1
    constraints: low = -sqrt((1-p)/p), high = sqrt(p/(1-p)).
    """
    if not 0.0 < p < 1.0:
        raise OutOfRangeError(f"p must lie strictly inside (0, 1), got {p}")
    low = -math.sqrt((1.0 - p) / p)
    high = math.sqrt(p / (1.0 - p))
    return TwoPointDistribution.standardized(low, high, p)


def feasible_p_interval(c: float) -> FeasibleInterval:
    """Values of p = P(X <= c) realizable on the standardized sphere.

    For c >= 0 the interval is [c²/(1+c²), 1); for c < 0 it is
    (0, 1/(1+c²)].  At c = 0 the printed lower endpoint 0 is kept even
    though no mean-0 variance-1 variable actually attains p = 0 there.
    """
    if not math.isfinite(c):
        raise OutOfRangeError(f"threshold must be finite, got {c}")
    if c >= 0.0:
        return FeasibleInterval(c * c / (1.0 + c * c), 1.0, lower_closed=True, upper_closed=False)
    return FeasibleInterval(0.0, 1.0 / (1.0 + c * c), lower_closed=False, upper_closed=True)


def l_value(p: float, c: float) -> float:
    """Capped mean of the standardized two-point distribution with parameter ``p``.

    L(p, c) = -sqrt(p(1-p)) + c(1-p).  Equals E(X ∧ c) whenever the cap c
    separates the two support points, i.e. for p in the feasible interval.
    """
    if not 0.0 < p < 1.0:
        raise OutOfRangeError(f"p must lie strictly inside (0, 1), got {p}")
    if not math.isfinite(c):
        raise OutOfRangeError(f"threshold must be finite, got {c}")
    return -math.sqrt(p * (1.0 - p)) + c * (1.0 - p)


def p_star(c: float) -> float:
    """Unconstrained minimizer of ``l_value`` in p: 1/2 + c / (2 sqrt(1+c²)).

    Always lies inside the feasible interval for ``c``, so the unconstrained
    minimum of the capped mean over the sphere is attained.
    """
    if not math.isfinite(c):
        raise OutOfRangeError(f"threshold must be finite, got {c}")
    return 0.5 + 0.5 * c / math.sqrt(1.0 + c * c)


def p_m(m_std: float) -> float:
    """Tail parameter pinned by a support floor at -m_std: 1/(1+m_std²).

    The two-point distribution with this parameter has its low point exactly
    on the floor.  Requires m_std > 0: a nonnegative floor with mean 0 and
    unit variance is impossible.
    """
    if not math.isfinite(m_std) or m_std <= 0.0:
        raise OutOfRangeError(f"standardized mean must be positive, got {m_std}")
    return 1.0 / (1.0 + m_std * m_std)


def dlp_bounds(spec: MomentSpec, c: Strike, p0: float) -> DlpBounds:
    """Envelope for E(X - c)+ given mean, variance and tail probability p0 = P(X > c).

    lower = (mean - c) * p0;  upper = lower + std_dev * sqrt(p0 (1 - p0)).
    Both sides are sharp: two-point distributions attain the upper bound.
    """
    if not 0.0 <= p0 <= 1.0:
        raise OutOfRangeError(f"tail probability must lie in [0, 1], got {p0}")
    lower = (spec.mean - c.value) * p0
    upper = lower + spec.std_dev * math.sqrt(p0 * (1.0 - p0))
    return DlpBounds(lower=lower, upper=upper, tail_prob=p0)


def one_sided_tail_bounds(c: float) -> tuple[float, float]:
    """Sharp (lower, upper) bounds on P(X <= c) for standardized X.

    c >= 0: P(X <= c) >= c²/(1+c²); c < 0: P(X <= c) <= 1/(1+c²).
    The uninformative side of each pair is 1 resp. 0.
    """
    if not math.isfinite(c):
        raise OutOfRangeError(f"threshold must be finite, got {c}")
    if c >= 0.0:
        return c * c / (1.0 + c * c), 1.0
    return 0.0, 1.0 / (1.0 + c * c)


def two_sided_tail_bound(c: float) -> float:
    """Upper bound 2/(1+c²) on P(|X| > c) for standardized X and c > 0.

    Beats the 1/c² Chebyshev bound exactly for c < 1, where the raw value
    exceeds 1 and is therefore vacuous; callers rendering reports should cap
    at 1 themselves — the raw formula value is returned here.
    """
    if not math.isfinite(c) or c <= 0.0:
        raise OutOfRangeError(f"threshold must be positive, got {c}")
    return 2.0 / (1.0 + c * c)


def _low_branch_standardized(m_std: float, c_std: float) -> bool:
    # Branch test c <= (1 - m²)/(2m) rearranged multiplication-only so the
    # decision is stable next to the seam (both formulas agree there).
    return 2.0 * m_std * c_std <= 1.0 - m_std * m_std


def standardized_scarf_inf(m_std: float, c_std: float) -> tuple[float, float | None, Branch]:
    """Minimal capped mean over standardized variables bounded below by -m_std.

    Returns ``(value, p_opt, branch)``.  On the low-strike branch the support
    floor binds and p_opt is the pinned parameter 1/(1+m_std²); on the
    high-strike branch the unconstrained minimizer applies.  In both cases
    value = l_value(max(p_star(c_std), p_m(m_std)), c_std).  For
    c_std <= -m_std the cap is below the whole support and every feasible
    variable has capped mean exactly c_std.
    """
    if not math.isfinite(m_std) or m_std <= 0.0:
        raise OutOfRangeError(f"standardized mean must be positive, got {m_std}")
    if not math.isfinite(c_std):
        raise OutOfRangeError(f"threshold must be finite, got {c_std}")
    if c_std <= -m_std:
        return c_std, None, Branch.DEGENERATE
    p_opt = max(p_star(c_std), p_m(m_std))
    branch = Branch.LOW_STRIKE if _low_branch_standardized(m_std, c_std) else Branch.HIGH_STRIKE
    return l_value(p_opt, c_std), p_opt, branch


def threshold_strike(spec: MomentSpec) -> float:
    """Raw strike at which the two branches of ``scarf_min`` meet."""
    if spec.mean <= 0.0:
        raise InvalidSpecError(f"mean must be positive, got {spec.mean}")
    return spec.second_moment / (2.0 * spec.mean)


def _extremal_raw(spec: MomentSpec, p_opt: float, pinned_low: bool) -> TwoPointDistribution:
    """Map the optimal standardized two-point distribution to raw scale.

    When the support floor binds, the low point is the floor itself; placing
    it at exactly 0.0 keeps the emitted distribution inside the nonnegative
    cone under floating point.
    """
    if pinned_low:
        high = spec.mean + spec.variance / spec.mean
        return TwoPointDistribution(0.0, high, p_opt)
    return two_point_from_p(p_opt).rescaled(spec.mean, spec.std_dev)


def scarf_min(spec: MomentSpec, c: Strike) -> ScarfSolution:
    """Worst-case capped mean min E(X ∧ c) over nonnegative X with the given moments.

    Two branches, meeting at strike (mean² + var)/(2 mean):

    * low strike: value = mean²/(mean² + var) · c, attained by a two-point
      distribution with one point at 0;
    * high strike: value = (c + mean)/2 - sqrt((c - mean)² + var)/2,
      attained by a two-point distribution interior to the cone.

    For c <= 0 the problem degenerates: X ∧ c = c for every nonnegative X,
    so the value is c and no particular extremal is singled out.
    """
    if spec.mean <= 0.0:
        raise InvalidSpecError(f"mean must be positive, got {spec.mean}")
    if c.value <= 0.0:
        return ScarfSolution(
            branch=Branch.DEGENERATE,
            p_opt=None,
            min_winsorized=c.value,
            max_call=spec.mean - c.value,
            extremal=None,
        )
    m_std = spec.mean / spec.std_dev
    c_std = (c.value - spec.mean) / spec.std_dev
    value_std, p_opt, _ = standardized_scarf_inf(m_std, c_std)
    assert p_opt is not None  # c > 0 implies c_std > -m_std
    value = spec.mean + spec.std_dev * value_std
    # Branch decided on raw inputs (multiplication-only) so ties at the seam
    # do not depend on the rounding of the standardization divisions.
    branch = Branch.LOW_STRIKE if 2.0 * spec.mean * c.value <= spec.second_moment else Branch.HIGH_STRIKE
    pinned = p_m(m_std) >= p_star(c_std)
    extremal = _extremal_raw(spec, p_opt, pinned_low=pinned)
    return ScarfSolution(
        branch=branch,
        p_opt=p_opt,
        min_winsorized=value,
        max_call=spec.mean - value,
        extremal=extremal,
    )


def lo_max(spec: MomentSpec, c: Strike) -> float:
    """Best-case call payoff max E(X - c)+ over nonnegative X with the given moments.

    Dual to ``scarf_min`` through (a - b)+ = a - a ∧ b: the value is
    mean - scarf_min.  Requires a strictly positive strike.
    """
    if c.value <= 0.0:
        raise DegenerateStrikeError(f"strike must be positive, got {c.value}")
    return spec.mean - scarf_min(spec, c).min_winsorized


def winsorized_floor(spec: MomentSpec, c: Strike) -> float:
    """Crude lower bound -(std_dev + |mean| + |c|) on E(X ∧ c), no positivity needed."""
    return -(spec.std_dev + abs(spec.mean) + abs(c.value))
