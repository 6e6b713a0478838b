"""Kendall rank-correlation matrices built from pairwise comparison signs.

For a p x n data matrix the M = n(n-1)/2 sample pairs are ordered
lexicographically: (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n).  Each
correlation entry is a concordant-minus-discordant count in [-M, M] divided
by M once at the end, so all three construction routes (direct summation,
inversion counting, sign-matrix Gram product) return bit-identical floats.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .datagen import DataMatrix

SYMM_MAGIC = b"SYMM"


def pair_count(n: int) -> int:
    """Number of unordered sample pairs, M = n(n-1)/2."""
    return n * (n - 1) // 2


def pair_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Left/right sample indices of every pair, in canonical order."""
    return np.triu_indices(n, 1)


def pair_position(i: int, j: int, n: int) -> int:
    """Linear position of 0-based pair (i, j), i < j, in canonical order."""
    if not 0 <= i < j < n:
        raise ValueError("need 0 <= i < j < n")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def pair_from_position(t: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`pair_position`."""
    if not 0 <= t < pair_count(n):
        raise ValueError("pair position out of range")
    i = 0
    offset = t
    while offset >= n - 1 - i:
        offset -= n - 1 - i
        i += 1
    return i, i + 1 + offset


@dataclass(frozen=True, eq=False)
class PairSignMatrix:
    """p x M grid of +/-1 comparison signs in canonical pair order."""

    signs: np.ndarray
    n: int

    def __post_init__(self):
        signs = np.asarray(self.signs, dtype=np.int8)
        if signs.ndim != 2:
            raise ValueError("signs must be a 2-D array")
        if signs.shape[1] != pair_count(self.n):
            raise ValueError("column count must equal n(n-1)/2")
        if not np.all(np.abs(signs) == 1):
            raise ValueError("entries must be +1 or -1")
        signs = signs.copy()
        signs.setflags(write=False)
        object.__setattr__(self, "signs", signs)

    @property
    def p(self) -> int:
        return self.signs.shape[0]

    @property
    def m(self) -> int:
        return self.signs.shape[1]


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Dense real symmetric matrix stored as its packed lower triangle.

    Storing a single triangle makes symmetry exact by construction.  Packing
    is row-major over rows k >= l: entry (k, l) sits at k(k+1)/2 + l.
    """

    order: int
    tril: np.ndarray

    def __post_init__(self):
        tril = np.asarray(self.tril, dtype=np.float64)
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if tril.shape != (self.order * (self.order + 1) // 2,):
            raise ValueError("packed triangle has the wrong length")
        tril = tril.copy()
        tril.setflags(write=False)
        object.__setattr__(self, "tril", tril)

    @classmethod
    def from_dense(cls, arr: np.ndarray, symmetry_tol: float = 0.0) -> "SymmetricMatrix":
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square 2-D array")
        if symmetry_tol >= 0 and not np.allclose(
            arr, arr.T, rtol=0.0, atol=symmetry_tol
        ):
            raise ValueError("matrix is not symmetric within tolerance")
        return cls(order=arr.shape[0], tril=arr[np.tril_indices(arr.shape[0])])

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.order, self.order))
        rows, cols = np.tril_indices(self.order)
        out[rows, cols] = self.tril
        out[cols, rows] = self.tril
        return out

    def entry(self, k: int, l: int) -> float:
        if k < l:
            k, l = l, k
        return float(self.tril[k * (k + 1) // 2 + l])

    def diagonal(self) -> np.ndarray:
        idx = np.arange(self.order)
        return self.tril[idx * (idx + 1) // 2 + idx]

    def trace(self) -> float:
        return float(self.diagonal().sum())

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.tril)))

    def save_csv(self, path) -> None:
        dense = self.to_dense()
        with open(path, "w") as fh:
            fh.write(f"# order={self.order}\n")
            for row in dense:
                fh.write(",".join(repr(x) for x in row) + "\n")

    @classmethod
    def load_csv(cls, path) -> "SymmetricMatrix":
        with open(path) as fh:
            lines = [line.strip() for line in fh if line.strip()]
        rows = [
            [float(x) for x in line.split(",")]
            for line in lines
            if not line.startswith("#")
        ]
        return cls.from_dense(np.array(rows), symmetry_tol=0.0)

    def save_binary(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(SYMM_MAGIC)
            fh.write(struct.pack("<Q", self.order))
            fh.write(self.tril.astype("<f8").tobytes())

    @classmethod
    def load_binary(cls, path) -> "SymmetricMatrix":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != SYMM_MAGIC:
                raise ValueError("not a SYMM file")
            (order,) = struct.unpack("<Q", fh.read(8))
            payload = fh.read()
        expected = order * (order + 1) // 2 * 8
        if len(payload) != expected:
            raise ValueError("SYMM payload length does not match the order")
        tril = np.frombuffer(payload, dtype="<f8").astype(np.float64)
        return cls(order=int(order), tril=tril)


def gram_symmetric(rows: np.ndarray, denom: float = 1.0) -> SymmetricMatrix:
    """``rows @ rows.T / denom`` packed as a SymmetricMatrix.

    Divides (rather than multiplying by a reciprocal) so that integer-valued
    Gram products match the integer-count routes bit for bit.
    """
    rows = np.asarray(rows, dtype=np.float64)
    dense = rows @ rows.T
    p = dense.shape[0]
    return SymmetricMatrix(order=p, tril=dense[np.tril_indices(p)] / denom)


def _counts_to_tau(counts: np.ndarray, m: int) -> SymmetricMatrix:
    p = counts.shape[0]
    tril = counts[np.tril_indices(p)].astype(np.float64) / m
    return SymmetricMatrix(order=p, tril=tril)


def pair_signs(data: DataMatrix) -> PairSignMatrix:
    """Comparison-sign grid of a data matrix, canonical pair order."""
    return PairSignMatrix(signs=kernels().pair_signs(data.values), n=data.n)


def tau_naive(data: DataMatrix) -> SymmetricMatrix:
    """Quadratic-cost reference: direct integer sum over all sample pairs.

    Kept deliberately simple as the oracle the fast paths are checked
    against; use :func:`tau_fast` for anything beyond small instances.
    """
    values = data.values
    p, n = data.p, data.n
    iu = np.triu_indices(n, 1)
    counts = np.empty((p, p), dtype=np.int64)
    for k in range(p):
        sk = np.sign(values[k, :, None] - values[k, None, :])[iu].astype(np.int64)
        for l in range(k + 1):
            sl = np.sign(values[l, :, None] - values[l, None, :])[iu].astype(np.int64)
            total = int(np.sum(sk * sl))
            counts[k, l] = total
            counts[l, k] = total
    return _counts_to_tau(counts, pair_count(n))


def tau_fast(data: DataMatrix, block_elems: int = 2**26) -> SymmetricMatrix:
    """Kendall correlation matrix via the active backend's counting kernel.

    numba backend: per-pair merge-sort inversion counting, O(n log n) per
    entry.  numpy backend: blocked exact sign-Gram accumulation that keeps at
    most ``block_elems`` float64 values live.  Bit-identical to
    :func:`tau_naive` either way.
    """
    counts = kernels().tau_counts(data.values, block_elems)
    return _counts_to_tau(counts, pair_count(data.n))


def tau_from_signs(signs: PairSignMatrix, block_elems: int = 2**26) -> SymmetricMatrix:
    """Kendall correlation matrix as the Gram product of a sign grid."""
    s = signs.signs
    p, m = s.shape
    out = np.zeros((p, p))
    step = max(1, min(m, int(block_elems) // max(p, 1)))
    for lo in range(0, m, step):
        block = s[:, lo : lo + step].astype(np.float64)
        out += block @ block.T
    counts = np.rint(out).astype(np.int64)
    return _counts_to_tau(counts, m)
