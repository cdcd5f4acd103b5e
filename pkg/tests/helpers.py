"""Shared test helpers."""

from __future__ import annotations

import numpy as np


def close(a: float, b: float, tol: float = 1e-12) -> bool:
    """Relative comparison that degrades to absolute below magnitude 1."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def random_positive_triples(count: int, seed: int) -> np.ndarray:
    """(count, 3) array of positive (mean, std_dev, strike) triples.

    Means and deviations cover [0.2, 4]; strikes spread around the branch
    seam (mean² + var) / (2 mean) by a log factor in [e⁻², e^1.2] so both
    branches and the near-seam region all appear.
    """
    rng = np.random.default_rng(seed)
    mean = rng.uniform(0.2, 4.0, count)
    std = rng.uniform(0.2, 4.0, count)
    seam = (mean * mean + std * std) / (2.0 * mean)
    strike = seam * np.exp(rng.uniform(-2.0, 1.2, count))
    return np.column_stack([mean, std, strike])
