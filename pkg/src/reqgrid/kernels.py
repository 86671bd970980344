"""Batch similarity kernels over a dense (users x items) view.

The numba path is the default; set REQGRID_NO_NUMBA=1 to force the pure
numpy fallback. Both backends produce identical results (the benchmark in
benchmarks/ compares them on large random matrices).
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("REQGRID_NO_NUMBA", "") not in ("1", "true", "yes")


def user_means(ratings: np.ndarray, mask: np.ndarray) -> np.ndarray:
    counts = mask.sum(axis=1)
    sums = (ratings * mask).sum(axis=1)
    means = np.zeros(len(counts))
    np.divide(sums, counts, out=means, where=counts > 0)
    return means


def _similarity_batch_numpy(ratings, mask, target, means):
    co = mask & mask[target]
    dev = ratings - means[:, None]
    dev_t = dev[target]
    num = (co * dev * dev_t[None, :]).sum(axis=1)
    den_t = (co * dev_t[None, :] ** 2).sum(axis=1)
    den_b = (co * dev**2).sum(axis=1)
    corated = co.sum(axis=1)
    values = np.zeros(len(ratings))
    ok = (corated >= 2) & (den_t > 0) & (den_b > 0)
    values[ok] = num[ok] / (np.sqrt(den_t[ok]) * np.sqrt(den_b[ok]))
    np.clip(values, -1.0, 1.0, out=values)
    return values, corated.astype(np.int64)


def _similarity_batch_jit_py(ratings, mask, target, means):
    n_users, n_items = ratings.shape
    values = np.zeros(n_users)
    corated = np.zeros(n_users, dtype=np.int64)
    mean_t = means[target]
    for b in range(n_users):
        num = 0.0
        den_t = 0.0
        den_b = 0.0
        count = 0
        for i in range(n_items):
            if mask[target, i] and mask[b, i]:
                dt = ratings[target, i] - mean_t
                db = ratings[b, i] - means[b]
                num += dt * db
                den_t += dt * dt
                den_b += db * db
                count += 1
        corated[b] = count
        if count >= 2 and den_t > 0.0 and den_b > 0.0:
            v = num / (np.sqrt(den_t) * np.sqrt(den_b))
            values[b] = min(1.0, max(-1.0, v))
    return values, corated


_similarity_batch_numba = None


def _numba_kernel():
    global _similarity_batch_numba, USE_NUMBA
    if _similarity_batch_numba is None:
        try:
            import numba
        except ImportError:  # pragma: no cover - numba is a declared dependency
            USE_NUMBA = False
            return None
        _similarity_batch_numba = numba.njit(cache=True)(_similarity_batch_jit_py)
    return _similarity_batch_numba


def similarity_batch(ratings, mask, target, backend: str | None = None):
    """Pearson similarity of the target row against every row.

    Sums range over each pair's co-rated columns; means over each row's
    full rated set. Degenerate pairs (fewer than 2 co-rated columns or a
    zero-variance factor) get value 0. Returns (values, corated_counts).
    """
    means = user_means(ratings, mask)
    if backend != "numpy" and (backend == "numba" or USE_NUMBA):
        kernel = _numba_kernel()
        if kernel is not None:
            return kernel(ratings, mask, target, means)
    return _similarity_batch_numpy(ratings, mask, target, means)
