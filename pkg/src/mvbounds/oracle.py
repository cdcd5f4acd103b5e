"""Brute-force ground truth for the closed-form bounds.

The moment problem restricted to a finite grid is a linear program whose
equality constraints are sum(p) = 1, sum(p x) = mean, sum(p x²) = second
moment, plus an optional tail equality sum(p; x <= c) = target.  Every
optimum sits at a vertex, and a vertex is a support subset with as many
points as constraints, so exhaustive enumeration of the size-k subsets with
a small square solve per subset answers the problem exactly — with no LP
machinery shared with the code under test.  Supports of fewer than k points
show up as vertices with zero weights, so only size-k subsets are visited.

The enumeration loop is the hot path; it runs through the numba kernels by
default and the vectorized numpy fallback when ``MVBOUNDS_DISABLE_NUMBA``
is set (see ``mvbounds._backend``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels_numpy
from ._backend import numba_enabled
from .errors import IllConditionedError, InfeasibleError, OutOfRangeError
from .types import PROB_NEG_TOL, DiscreteDistribution, MomentSpec, Strike

__all__ = [
    "CONDITION_LIMIT",
    "OracleProblem",
    "VertexSet",
    "winsorized_expectation",
    "expected_call",
    "enumerate_vertices",
    "oracle_min",
    "random_feasible",
]

#: Subset systems with a 1-norm condition estimate above this are skipped.
CONDITION_LIMIT = 1e12

#: Hard cap on the number of enumerated subsets, to fail fast on absurd grids.
MAX_STREAM_SUBSETS = 80_000_000
MAX_COLLECT_SUBSETS = 5_000_000


@dataclass(frozen=True)
class OracleProblem:
    """A discretized worst-case capped-mean problem.

    ``grid`` is the candidate support; ``lower_bound`` (when present) is a
    support floor the grid must respect; ``tail_prob`` (when present) adds
    the equality P(X <= strike) = tail_prob, with the comparison closed
    at the strike.
    """

    spec: MomentSpec
    strike: Strike
    grid: np.ndarray
    lower_bound: float | None = None
    tail_prob: float | None = None

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        object.__setattr__(self, "grid", grid)
        if grid.ndim != 1 or grid.size < 3:
            raise OutOfRangeError("grid must be a 1-D array with at least 3 points")
        if not np.all(np.isfinite(grid)):
            raise OutOfRangeError("grid must be finite")
        if np.any(np.diff(grid) <= 0.0):
            raise OutOfRangeError("grid must be strictly increasing")
        if self.lower_bound is not None and grid[0] < self.lower_bound:
            raise OutOfRangeError(
                f"grid points must respect the lower bound {self.lower_bound}, min is {grid[0]}"
            )
        if self.tail_prob is not None and not 0.0 <= self.tail_prob <= 1.0:
            raise OutOfRangeError(f"tail_prob must lie in [0, 1], got {self.tail_prob}")

    @property
    def n_constraints(self) -> int:
        return 3 if self.tail_prob is None else 4


@dataclass(frozen=True)
class VertexSet:
    """All feasible vertices of one discretized problem, lexicographic order."""

    points: np.ndarray
    indices: np.ndarray
    probs: np.ndarray
    skipped: int
    total: int

    def __len__(self) -> int:
        return int(self.indices.shape[0])

    def values(self, objective: np.ndarray) -> np.ndarray:
        """Per-vertex value of a linear objective given per-point costs."""
        return (self.probs * objective[self.indices]).sum(axis=1)

    def distribution(self, row: int) -> DiscreteDistribution:
        keep = self.probs[row] > 0.0
        return DiscreteDistribution(self.points[self.indices[row][keep]], self.probs[row][keep])


def winsorized_expectation(dist: DiscreteDistribution, c: Strike) -> float:
    """E of ``dist`` capped at the strike: sum p_i min(x_i, c)."""
    return float(dist.probs @ np.minimum(dist.support, c.value))


def expected_call(dist: DiscreteDistribution, c: Strike) -> float:
    """E of the payoff above the strike: sum p_i max(x_i - c, 0)."""
    return float(dist.probs @ np.maximum(dist.support - c.value, 0.0))


def _constraints(problem: OracleProblem) -> tuple[np.ndarray, np.ndarray]:
    x = problem.grid
    rows = [np.ones_like(x), x, x * x]
    rhs = [1.0, problem.spec.mean, problem.spec.second_moment]
    if problem.tail_prob is not None:
        rows.append((x <= problem.strike.value).astype(float))
        rhs.append(problem.tail_prob)
    return np.ascontiguousarray(np.vstack(rows)), np.asarray(rhs)


def _subset_count(n: int, k: int, cap: int) -> int:
    total = math.comb(n, k) if n >= k else 0
    if total > cap:
        raise OutOfRangeError(
            f"grid of {n} points yields {total} candidate supports, above the cap of {cap}"
        )
    return total


def _no_vertex_error(problem: OracleProblem, skipped: int, total: int) -> Exception:
    if total > 0 and skipped == total:
        return IllConditionedError(
            "every candidate support produced a singular or ill-conditioned system"
        )
    return InfeasibleError(
        "no grid-supported distribution matches the requested moments"
        + ("" if problem.tail_prob is None else " and tail probability")
    )


def enumerate_vertices(problem: OracleProblem) -> VertexSet:
    """Enumerate every feasible vertex of the discretized moment problem."""
    A, b = _constraints(problem)
    k, n = A.shape
    total = _subset_count(n, k, MAX_COLLECT_SUBSETS)
    if total == 0:
        raise InfeasibleError(f"grid has {n} points but the problem has {k} constraints")
    if numba_enabled():
        from . import _kernels_numba

        out_idx = np.empty((total, k), dtype=np.int64)
        out_probs = np.empty((total, k))
        count, skipped = _kernels_numba.collect_vertices(
            A, b, CONDITION_LIMIT, PROB_NEG_TOL, out_idx, out_probs
        )
        indices, probs = out_idx[:count].copy(), out_probs[:count].copy()
    else:
        indices, probs, skipped = _kernels_numpy.collect_vertices(
            A, b, problem.grid, CONDITION_LIMIT, PROB_NEG_TOL, fast_k3=(k == 3)
        )
    if indices.shape[0] == 0:
        raise _no_vertex_error(problem, skipped, total)
    return VertexSet(
        points=problem.grid, indices=indices, probs=probs, skipped=int(skipped), total=total
    )


def _stream_minimize(problem: OracleProblem, objective: np.ndarray):
    A, b = _constraints(problem)
    k, n = A.shape
    total = _subset_count(n, k, MAX_STREAM_SUBSETS)
    if total == 0:
        raise InfeasibleError(f"grid has {n} points but the problem has {k} constraints")
    if numba_enabled():
        from . import _kernels_numba

        found, value, idx, probs, skipped = _kernels_numba.stream_min(
            A, b, objective, CONDITION_LIMIT, PROB_NEG_TOL
        )
    else:
        found, value, idx, probs, skipped = _kernels_numpy.stream_min(
            A, b, problem.grid, objective, CONDITION_LIMIT, PROB_NEG_TOL, fast_k3=(k == 3)
        )
    if not found:
        raise _no_vertex_error(problem, skipped, total)
    return value, idx, probs


def oracle_min(problem: OracleProblem) -> tuple[float, DiscreteDistribution]:
    """Exact minimum of E(X ∧ strike) over grid-supported feasible distributions.

    Returns the value and an attaining distribution; ties across vertices go
    to the lexicographically first support subset.
    """
    objective = np.minimum(problem.grid, problem.strike.value)
    _, idx, probs = _stream_minimize(problem, objective)
    keep = probs > 0.0
    argmin = DiscreteDistribution(problem.grid[idx[keep]], probs[keep])
    # Re-evaluate on the emitted distribution so the returned value is exactly
    # what the argmin achieves under this library's own expectation.
    return winsorized_expectation(argmin, problem.strike), argmin


def random_feasible(
    spec: MomentSpec,
    grid: np.ndarray,
    lower_bound: float | None = None,
    seed: int = 0,
) -> DiscreteDistribution:
    """A random vertex of the feasible polytope, deterministic in ``seed``.

    Draws one standard-normal cost per grid point and returns the feasible
    vertex minimizing that cost, so the sample satisfies the moment
    constraints exactly by construction.
    """
    problem = OracleProblem(spec=spec, strike=Strike(0.0), grid=np.asarray(grid, dtype=float),
                            lower_bound=lower_bound)
    rng = np.random.default_rng(seed)
    objective = rng.standard_normal(problem.grid.size)
    value, idx, probs = _stream_minimize(problem, objective)
    keep = probs > 0.0
    return DiscreteDistribution(problem.grid[idx[keep]], probs[keep])


def sample_vertex(vertices: VertexSet, rng: np.random.Generator) -> DiscreteDistribution:
    """One random-objective vertex draw against a pre-enumerated vertex set."""
    objective = rng.standard_normal(vertices.points.size)
    row = int(np.argmin(vertices.values(objective)))
    return vertices.distribution(row)
