"""Numba-jitted implementations of the pairwise hot kernels.

Parallel loops run over independent output entries only (one writer per
entry, sequential accumulation within an entry), so output is identical for
any thread count.  Sign grids and concordance counts are integer-exact and
bit-identical to the numpy backend.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _merge_count(a: np.ndarray, buf: np.ndarray) -> int:
    """Inversions of ``a`` by bottom-up merge sort; ``a`` is destroyed."""
    n = a.size
    inv = 0
    width = 1
    src = a
    dst = buf
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i = lo
            j = mid
            k = lo
            while i < mid and j < hi:
                if src[i] <= src[j]:
                    dst[k] = src[i]
                    i += 1
                else:
                    dst[k] = src[j]
                    inv += mid - i
                    j += 1
                k += 1
            while i < mid:
                dst[k] = src[i]
                i += 1
                k += 1
            while j < hi:
                dst[k] = src[j]
                j += 1
                k += 1
        src, dst = dst, src
        width *= 2
    return inv


@njit(cache=True, parallel=True)
def _pair_signs(values: np.ndarray, i_idx: np.ndarray, j_idx: np.ndarray) -> np.ndarray:
    p = values.shape[0]
    m = i_idx.size
    out = np.empty((p, m), np.int8)
    for k in prange(p):
        for t in range(m):
            if values[k, i_idx[t]] > values[k, j_idx[t]]:
                out[k, t] = 1
            else:
                out[k, t] = -1
    return out


@njit(cache=True, parallel=True)
def _tau_counts(values: np.ndarray, k_arr: np.ndarray, l_arr: np.ndarray) -> np.ndarray:
    p, n = values.shape
    m = n * (n - 1) // 2
    orders = np.empty((p, n), np.int64)
    for k in range(p):
        orders[k] = np.argsort(values[k])
    out = np.empty((p, p), np.int64)
    for k in range(p):
        out[k, k] = m
    for t in prange(k_arr.size):
        k = k_arr[t]
        l = l_arr[t]
        y = np.empty(n)
        buf = np.empty(n)
        for i in range(n):
            y[i] = values[l, orders[k, i]]
        discordant = _merge_count(y, buf)
        c = m - 2 * discordant
        out[k, l] = c
        out[l, k] = c
    return out


@njit(cache=True, parallel=True)
def _pair_residuals(
    pair_vals: np.ndarray, u: np.ndarray, i_idx: np.ndarray, j_idx: np.ndarray
) -> np.ndarray:
    p, m = pair_vals.shape
    out = np.empty((p, m))
    for k in prange(p):
        for t in range(m):
            out[k, t] = (pair_vals[k, t] - u[k, i_idx[t]]) + u[k, j_idx[t]]
    return out


def pair_signs(values: np.ndarray) -> np.ndarray:
    """(p, M) grid of comparison signs in canonical pair order, int8."""
    i_idx, j_idx = np.triu_indices(values.shape[1], 1)
    return _pair_signs(np.ascontiguousarray(values), i_idx, j_idx)


def tau_counts(values: np.ndarray, block_elems: int = 2**26) -> np.ndarray:
    """Concordant-minus-discordant counts for every row pair, int64 (p, p).

    Sorts each reference row once, then counts order inversions of the other
    row with a merge sort: O(n log n) per pair, no p x M grid.
    ``block_elems`` is accepted for interface parity and ignored.
    """
    p = values.shape[0]
    k_arr, l_arr = np.triu_indices(p, 1)
    return _tau_counts(np.ascontiguousarray(values), k_arr, l_arr)


def pair_residuals(
    pair_vals: np.ndarray,
    u: np.ndarray,
    i_idx: np.ndarray,
    j_idx: np.ndarray,
) -> np.ndarray:
    """Centered residual grid: (pair value - u at left index) + u at right."""
    return _pair_residuals(
        np.ascontiguousarray(pair_vals), np.ascontiguousarray(u), i_idx, j_idx
    )


def warm_up() -> None:
    """Trigger JIT compilation on tiny inputs (cached across processes)."""
    x = np.array([[0.3, 0.1, 0.2], [0.9, 0.5, 0.7]])
    pair_signs(x)
    tau_counts(x)
    i_idx, j_idx = np.triu_indices(3, 1)
    pair_residuals(np.ones((2, 3)), np.zeros((2, 3)), i_idx, j_idx)
