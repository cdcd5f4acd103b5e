"""Domain types shared across the library.

Raw-scale quantities (prices) and standardized quantities (mean 0,
variance 1) are kept apart by construction: raw strikes travel inside
``Strike``, standardized thresholds are plain floats, and
``StandardizedProblem`` marks the results of the affine reduction.
Mixing the two scales is the most likely usage bug, so the types make it
loud.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import OutOfRangeError

#: Absolute tolerance for exact-identity checks on constructed values.
IDENTITY_TOL = 1e-12

#: Probabilities are allowed to undershoot zero by this much before a
#: candidate is rejected; anything in [-PROB_NEG_TOL, 0] is clamped to 0.
PROB_NEG_TOL = 1e-12


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise OutOfRangeError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class MomentSpec:
    """First two moments of the unknown distribution: mean and standard deviation."""

    mean: float
    std_dev: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mean", _require_finite("mean", self.mean))
        object.__setattr__(self, "std_dev", _require_finite("std_dev", self.std_dev))
        if self.std_dev <= 0.0:
            raise OutOfRangeError(f"std_dev must be positive, got {self.std_dev}")

    @property
    def variance(self) -> float:
        return self.std_dev * self.std_dev

    @property
    def second_moment(self) -> float:
        return self.mean * self.mean + self.variance


@dataclass(frozen=True)
class Strike:
    """Cap / exercise threshold, in the same price units as ``MomentSpec.mean``."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _require_finite("strike", self.value))


@dataclass(frozen=True)
class StandardizedProblem:
    """Problem data mapped to the mean-0, variance-1 scale.

    ``strike_std`` is the dimensionless threshold; ``lower_bound_std`` is
    the support floor the positivity constraint becomes after the affine
    map (the floor 0 maps to -mean/std_dev).
    """

    strike_std: float
    lower_bound_std: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "strike_std", _require_finite("strike_std", self.strike_std))
        object.__setattr__(
            self, "lower_bound_std", _require_finite("lower_bound_std", self.lower_bound_std)
        )


@dataclass(frozen=True)
class TwoPointDistribution:
    """A random variable taking two values: ``low`` with probability ``p_low``.

    These are the extremal objects of the whole library: every sharp bound
    here is attained by one of them.
    """

    low: float
    high: float
    p_low: float

    def __post_init__(self) -> None:
        for name in ("low", "high", "p_low"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if not self.low < self.high:
            raise OutOfRangeError(f"two-point values must satisfy low < high, got {self.low} >= {self.high}")
        # p_low = 0 or 1 would be a degenerate (one-point) distribution.
        if not 0.0 < self.p_low < 1.0:
            raise OutOfRangeError(f"p_low must lie strictly inside (0, 1), got {self.p_low}")

    @classmethod
    def standardized(cls, low: float, high: float, p_low: float) -> "TwoPointDistribution":
        """Construct and check membership of the mean-0, variance-1 sphere."""
        dist = cls(low, high, p_low)
        if abs(dist.mean()) > IDENTITY_TOL:
            raise OutOfRangeError(f"standardized two-point mean is {dist.mean()}, not 0")
        if abs(dist.second_moment() - 1.0) > IDENTITY_TOL:
            raise OutOfRangeError(
                f"standardized two-point second moment is {dist.second_moment()}, not 1"
            )
        return dist

    @property
    def p_high(self) -> float:
        return 1.0 - self.p_low

    def mean(self) -> float:
        return self.p_low * self.low + self.p_high * self.high

    def second_moment(self) -> float:
        return self.p_low * self.low**2 + self.p_high * self.high**2

    def variance(self) -> float:
        mu = self.mean()
        return self.second_moment() - mu * mu

    def winsorized_mean(self, cap: float) -> float:
        """E of the variable capped at ``cap``."""
        return self.p_low * min(self.low, cap) + self.p_high * min(self.high, cap)

    def expected_call(self, strike: float) -> float:
        """E of the positive part above ``strike``."""
        return self.p_low * max(self.low - strike, 0.0) + self.p_high * max(self.high - strike, 0.0)

    def rescaled(self, mean: float, std_dev: float) -> "TwoPointDistribution":
        """Affine image x -> mean + std_dev * x (std_dev > 0 preserves ordering)."""
        if std_dev <= 0.0:
            raise OutOfRangeError(f"std_dev must be positive, got {std_dev}")
        return TwoPointDistribution(
            mean + std_dev * self.low, mean + std_dev * self.high, self.p_low
        )

    def as_discrete(self) -> "DiscreteDistribution":
        return DiscreteDistribution(
            support=np.array([self.low, self.high]),
            probs=np.array([self.p_low, self.p_high]),
        )


@dataclass(frozen=True)
class FeasibleInterval:
    """Interval of admissible values for the tail parameter p = P(X <= c)."""

    lower: float
    upper: float
    lower_closed: bool
    upper_closed: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise OutOfRangeError(
                f"feasible interval must satisfy 0 <= lower <= upper <= 1, got [{self.lower}, {self.upper}]"
            )

    def contains(self, p: float) -> bool:
        if p < self.lower or p > self.upper:
            return False
        if p == self.lower and not self.lower_closed:
            return False
        if p == self.upper and not self.upper_closed:
            return False
        return True

    def interior_grid(self, count: int) -> np.ndarray:
        """``count`` points strictly between the endpoints, evenly spaced."""
        ticks = np.arange(1, count + 1, dtype=float) / (count + 1)
        return self.lower + (self.upper - self.lower) * ticks

    def __str__(self) -> str:
        lo = "[" if self.lower_closed else "("
        hi = "]" if self.upper_closed else ")"
        return f"{lo}{self.lower}, {self.upper}{hi}"


@dataclass(frozen=True)
class DlpBounds:
    """Two-sided envelope for the expected call payoff at a known tail probability.

    ``tail_prob`` is P(X > strike); the envelope width is
    std_dev * sqrt(tail_prob * (1 - tail_prob)).
    """

    lower: float
    upper: float
    tail_prob: float

    def __post_init__(self) -> None:
        for name in ("lower", "upper", "tail_prob"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if not 0.0 <= self.tail_prob <= 1.0:
            raise OutOfRangeError(f"tail_prob must lie in [0, 1], got {self.tail_prob}")
        if self.lower > self.upper:
            raise OutOfRangeError(f"bounds out of order: {self.lower} > {self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower


class Branch(Enum):
    """Which closed-form branch of the capped-mean minimum applies."""

    LOW_STRIKE = "LowStrike"
    HIGH_STRIKE = "HighStrike"
    DEGENERATE = "Degenerate"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ScarfSolution:
    """Solution of the worst-case capped-mean problem over nonnegative variables.

    ``min_winsorized`` is the minimal E(X ∧ c); ``max_call`` the dual maximal
    E(X - c)+; ``extremal`` the attaining two-point distribution in raw
    scale (absent on the degenerate branch, where every feasible X attains
    the value).
    """

    branch: Branch
    p_opt: float | None
    min_winsorized: float
    max_call: float
    extremal: TwoPointDistribution | None

    def __post_init__(self) -> None:
        if self.branch is Branch.DEGENERATE:
            if self.p_opt is not None or self.extremal is not None:
                raise OutOfRangeError("degenerate solutions carry no optimal parameter or extremal")
        else:
            if self.p_opt is None or self.extremal is None:
                raise OutOfRangeError("non-degenerate solutions need p_opt and extremal")
            if not 0.0 < self.p_opt <= 1.0:
                raise OutOfRangeError(f"p_opt must lie in (0, 1], got {self.p_opt}")


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite-support distribution: strictly increasing support, probabilities summing to 1."""

    support: np.ndarray
    probs: np.ndarray

    def __post_init__(self) -> None:
        support = np.asarray(self.support, dtype=float)
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        if support.ndim != 1 or probs.shape != support.shape:
            raise OutOfRangeError("support and probs must be 1-D arrays of equal length")
        if support.size == 0:
            raise OutOfRangeError("support must be non-empty")
        if not np.all(np.isfinite(support)) or not np.all(np.isfinite(probs)):
            raise OutOfRangeError("support and probs must be finite")
        if np.any(np.diff(support) <= 0.0):
            raise OutOfRangeError("support must be strictly increasing with no duplicates")
        if np.any(probs < 0.0):
            raise OutOfRangeError(f"probabilities must be nonnegative, min is {probs.min()}")
        total = float(probs.sum())
        if abs(total - 1.0) > IDENTITY_TOL:
            raise OutOfRangeError(f"probabilities must sum to 1 within {IDENTITY_TOL}, got {total}")

    def __len__(self) -> int:
        return int(self.support.size)

    def mean(self) -> float:
        return float(self.probs @ self.support)

    def second_moment(self) -> float:
        return float(self.probs @ (self.support * self.support))

    def variance(self) -> float:
        mu = self.mean()
        return self.second_moment() - mu * mu

    def prob_at_most(self, c: float) -> float:
        return float(self.probs[self.support <= c].sum())

    def prob_greater(self, c: float) -> float:
        return float(self.probs[self.support > c].sum())

    def standardized(self, spec: MomentSpec) -> "DiscreteDistribution":
        """Pull back through x -> (x - mean) / std_dev."""
        return DiscreteDistribution((self.support - spec.mean) / spec.std_dev, self.probs)

    def as_lists(self) -> tuple[list[float], list[float]]:
        return self.support.tolist(), self.probs.tolist()
