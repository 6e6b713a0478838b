"""Pure-numpy implementations of the pairwise hot kernels.

Fallback path for environments without numba; also the reference the jitted
kernels are benchmarked against.  The concordance counts are accumulated
through float64 matmuls over +/-1 blocks: every partial sum is an integer of
magnitude at most n(n-1)/2 << 2**53, so the results are exact and identical
to the integer loops of the numba backend.
"""

from __future__ import annotations

import numpy as np


def pair_signs(values: np.ndarray) -> np.ndarray:
    """(p, M) grid of comparison signs in canonical pair order, int8."""
    n = values.shape[1]
    i_idx, j_idx = np.triu_indices(n, 1)
    return np.sign(values[:, i_idx] - values[:, j_idx]).astype(np.int8)


def tau_counts(values: np.ndarray, block_elems: int = 2**26) -> np.ndarray:
    """Concordant-minus-discordant counts for every row pair, int64 (p, p).

    Streams column blocks of the sign grid (at most ``block_elems`` float64
    entries live at a time) through BLAS matmuls, so the full p x M grid is
    never materialized.
    """
    p, n = values.shape
    i_idx, j_idx = np.triu_indices(n, 1)
    m = i_idx.size
    out = np.zeros((p, p))
    step = max(1, min(m, int(block_elems) // max(p, 1)))
    for lo in range(0, m, step):
        hi = min(lo + step, m)
        block = np.sign(values[:, i_idx[lo:hi]] - values[:, j_idx[lo:hi]])
        out += block @ block.T
    return np.rint(out).astype(np.int64)


def pair_residuals(
    pair_vals: np.ndarray,
    u: np.ndarray,
    i_idx: np.ndarray,
    j_idx: np.ndarray,
) -> np.ndarray:
    """Centered residual grid: (pair value - u at left index) + u at right."""
    return (pair_vals - u[:, i_idx]) + u[:, j_idx]
