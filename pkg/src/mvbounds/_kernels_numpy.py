"""Pure-numpy vertex-enumeration kernels (fallback backend).

Candidate supports are the size-k subsets of the grid, visited in
lexicographic order in vectorized batches.  For the plain moment problem
(k = 3, rows 1/x/x²) the subset system is polynomial interpolation, so the
probabilities and the 1-norm condition number come from closed forms; the
tail-constrained k = 4 system goes through batched LAPACK det/inv.
"""

from __future__ import annotations

import itertools

import numpy as np

BATCH = 1 << 16


def comb_batches(n: int, k: int, batch: int = BATCH):
    """Yield (B, k) int64 arrays of subset indices, lexicographic order."""
    it = itertools.combinations(range(n), k)
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return
        yield np.asarray(chunk, dtype=np.int64)


def _probs_k3(x, m1, m2, idx):
    """Interpolation-weight solve for subsets {a, b, d} of the 1/x/x² system.

    p_a = (m2 - (b + d) m1 + b d) / ((a - b)(a - d)), cyclically.  Also
    returns the 1-norm condition number, whose inverse factor is available
    in closed form for the same reason.
    """
    a = x[idx[:, 0]]
    b = x[idx[:, 1]]
    d = x[idx[:, 2]]
    da = (a - b) * (a - d)
    db = (b - a) * (b - d)
    dd = (d - a) * (d - b)
    pa = (m2 - (b + d) * m1 + b * d) / da
    pb = (m2 - (a + d) * m1 + a * d) / db
    pd = (m2 - (a + b) * m1 + a * b) / dd
    probs = np.stack((pa, pb, pd), axis=1)

    colnorm = 1.0 + np.abs(x) + x * x
    norm_a = np.maximum(
        np.maximum(colnorm[idx[:, 0]], colnorm[idx[:, 1]]), colnorm[idx[:, 2]]
    )
    c0 = np.abs(b * d / da) + np.abs(a * d / db) + np.abs(a * b / dd)
    c1 = np.abs((b + d) / da) + np.abs((a + d) / db) + np.abs((a + b) / dd)
    c2 = np.abs(1.0 / da) + np.abs(1.0 / db) + np.abs(1.0 / dd)
    kappa = norm_a * np.maximum(np.maximum(c0, c1), c2)
    return probs, kappa


def _probs_general(A, b, idx):
    """Batched square solve of the subset systems via det/inv.

    Returns (probs, kappa, solvable) where rows with ``solvable`` False had an
    exactly singular system (their probs/kappa entries are undefined).
    """
    B, k = idx.shape
    M = np.empty((B, k, k))
    for row in range(k):
        M[:, row, :] = A[row, idx]
    dets = np.linalg.det(M)
    solvable = np.isfinite(dets) & (dets != 0.0)
    probs = np.full((B, k), np.nan)
    kappa = np.full(B, np.inf)
    if np.any(solvable):
        inv = np.linalg.inv(M[solvable])
        norm_m = np.abs(M[solvable]).sum(axis=1).max(axis=1)
        norm_i = np.abs(inv).sum(axis=1).max(axis=1)
        kappa[solvable] = norm_m * norm_i
        probs[solvable] = inv @ b
    return probs, kappa, solvable


def _batch_candidates(A, b, x, idx, cond_limit, neg_tol, fast_k3):
    """Solve one batch; returns (probs, feasible mask, n_skipped)."""
    if fast_k3:
        probs, kappa = _probs_k3(x, b[1], b[2], idx)
        solvable = np.isfinite(kappa)
    else:
        probs, kappa, solvable = _probs_general(A, b, idx)
    well = solvable & (kappa <= cond_limit)
    skipped = int(idx.shape[0] - well.sum())
    feasible = well & np.all(probs >= -neg_tol, axis=1)
    return probs, feasible, skipped


def _clamped(probs):
    return np.where(probs < 0.0, 0.0, probs)


def stream_min(A, b, x, obj, cond_limit, neg_tol, fast_k3):
    """Minimize sum(p_i * obj[i]) over feasible subset vertices.

    Returns (found, value, best_idx, best_probs, skipped); ties keep the
    lexicographically first subset.
    """
    k, n = A.shape
    best_value = np.inf
    best_idx = None
    best_probs = None
    found = False
    skipped = 0
    for idx in comb_batches(n, k):
        probs, feasible, skip = _batch_candidates(A, b, x, idx, cond_limit, neg_tol, fast_k3)
        skipped += skip
        if not np.any(feasible):
            continue
        probs = _clamped(probs)
        values = np.where(feasible, (probs * obj[idx]).sum(axis=1), np.inf)
        pos = int(np.argmin(values))
        if values[pos] < best_value:
            best_value = float(values[pos])
            best_idx = idx[pos].copy()
            best_probs = probs[pos].copy()
            found = True
    return found, best_value, best_idx, best_probs, skipped


def collect_vertices(A, b, x, cond_limit, neg_tol, fast_k3):
    """All feasible subset vertices, lexicographic order.

    Returns (idx (V, k), probs (V, k), skipped).
    """
    k, n = A.shape
    idx_parts = []
    prob_parts = []
    skipped = 0
    for idx in comb_batches(n, k):
        probs, feasible, skip = _batch_candidates(A, b, x, idx, cond_limit, neg_tol, fast_k3)
        skipped += skip
        if np.any(feasible):
            idx_parts.append(idx[feasible])
            prob_parts.append(_clamped(probs[feasible]))
    if idx_parts:
        return np.vstack(idx_parts), np.vstack(prob_parts), skipped
    return np.empty((0, k), dtype=np.int64), np.empty((0, k)), skipped
