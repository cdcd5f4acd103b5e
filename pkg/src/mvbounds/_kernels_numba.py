"""Numba-compiled vertex-enumeration kernels (default backend).

Same contract as ``_kernels_numpy``: visit all size-k subsets of the grid in
lexicographic order, solve each k-by-k constraint system, skip
singular/ill-conditioned ones, keep vertices with nonnegative probabilities.
The per-subset solve is a hand-rolled Gauss-Jordan inverse with partial
pivoting; k is 3 or 4, so the O(k³) inner loops are trivial.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _gj_inverse(M, inv):
    """Invert M into ``inv`` in place; False when a pivot is exactly zero."""
    k = M.shape[0]
    aug = np.empty((k, 2 * k))
    for i in range(k):
        for j in range(k):
            aug[i, j] = M[i, j]
            aug[i, k + j] = 1.0 if i == j else 0.0
    for col in range(k):
        piv = col
        best = abs(aug[col, col])
        for r in range(col + 1, k):
            cand = abs(aug[r, col])
            if cand > best:
                best = cand
                piv = r
        if best == 0.0:
            return False
        if piv != col:
            for j in range(2 * k):
                tmp = aug[col, j]
                aug[col, j] = aug[piv, j]
                aug[piv, j] = tmp
        scale = aug[col, col]
        for j in range(2 * k):
            aug[col, j] /= scale
        for r in range(k):
            if r != col:
                factor = aug[r, col]
                if factor != 0.0:
                    for j in range(2 * k):
                        aug[r, j] -= factor * aug[col, j]
    for i in range(k):
        for j in range(k):
            inv[i, j] = aug[i, k + j]
    return True


@njit(cache=True)
def _subset_probs(A, b, idx, M, Minv, probs, cond_limit, neg_tol):
    """Solve the subset system; 0 feasible, 1 skipped, 2 negative weight."""
    k = idx.shape[0]
    for r in range(k):
        for j in range(k):
            M[r, j] = A[r, idx[j]]
    if not _gj_inverse(M, Minv):
        return 1
    norm_m = 0.0
    norm_i = 0.0
    for j in range(k):
        sm = 0.0
        si = 0.0
        for i in range(k):
            sm += abs(M[i, j])
            si += abs(Minv[i, j])
        if sm > norm_m:
            norm_m = sm
        if si > norm_i:
            norm_i = si
    if not norm_m * norm_i <= cond_limit:
        return 1
    feasible = True
    for i in range(k):
        s = 0.0
        for j in range(k):
            s += Minv[i, j] * b[j]
        if s < -neg_tol:
            feasible = False
        probs[i] = s if s > 0.0 else 0.0
    return 0 if feasible else 2


@njit(cache=True)
def _advance(idx, n):
    """Next lexicographic combination; False when exhausted."""
    k = idx.shape[0]
    pos = k - 1
    while pos >= 0 and idx[pos] == n - k + pos:
        pos -= 1
    if pos < 0:
        return False
    idx[pos] += 1
    for t in range(pos + 1, k):
        idx[t] = idx[t - 1] + 1
    return True


@njit(cache=True)
def stream_min(A, b, obj, cond_limit, neg_tol):
    """Minimize sum(p_i * obj[i]) over feasible subset vertices.

    Returns (found, value, best_idx, best_probs, skipped); strict-improvement
    updates keep the lexicographically first minimizer.
    """
    k, n = A.shape
    idx = np.arange(k)
    M = np.empty((k, k))
    Minv = np.empty((k, k))
    probs = np.empty(k)
    best_idx = np.zeros(k, dtype=np.int64)
    best_probs = np.zeros(k)
    best_value = np.inf
    found = False
    skipped = 0
    while True:
        status = _subset_probs(A, b, idx, M, Minv, probs, cond_limit, neg_tol)
        if status == 1:
            skipped += 1
        elif status == 0:
            value = 0.0
            for j in range(k):
                value += probs[j] * obj[idx[j]]
            if value < best_value:
                best_value = value
                for j in range(k):
                    best_idx[j] = idx[j]
                    best_probs[j] = probs[j]
                found = True
        if not _advance(idx, n):
            break
    return found, best_value, best_idx, best_probs, skipped


@njit(cache=True)
def collect_vertices(A, b, cond_limit, neg_tol, out_idx, out_probs):
    """Fill preallocated arrays with all feasible vertices; returns (count, skipped)."""
    k, n = A.shape
    idx = np.arange(k)
    M = np.empty((k, k))
    Minv = np.empty((k, k))
    probs = np.empty(k)
    count = 0
    skipped = 0
    while True:
        status = _subset_probs(A, b, idx, M, Minv, probs, cond_limit, neg_tol)
        if status == 1:
            skipped += 1
        elif status == 0:
            for j in range(k):
                out_idx[count, j] = idx[j]
                out_probs[count, j] = probs[j]
            count += 1
        if not _advance(idx, n):
            break
    return count, skipped
