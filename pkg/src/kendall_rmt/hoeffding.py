"""Hoeffding decomposition of pairwise comparison kernels.

Each comparison value splits into single-sample projections and a centered
residual:

    v[k,(i,j)] = u[k,i] - u[k,j] + vbar[k,(i,j)]

where u[k,i] is the conditional mean of the kernel given the left sample.
For the sign kernel u = 2 F(x) - 1 with F the marginal CDF (``exact_cdf``
mode) or its within-row rank estimate (``empirical_rank`` mode).  The Gram
matrix of the residual grid carries the quadratic-regime spectral law; the
remainder relative to the full correlation matrix has rank O(n).

The same split applies to any bounded antisymmetric kernel phi(x, y); its
residual variance alpha scales the limit law (1/3 for sign).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels
from .datagen import DataMatrix, _draw, marginal_cdf
from .kendall import SymmetricMatrix, gram_symmetric, pair_count, pair_indices

MODES = ("exact_cdf", "empirical_rank")

KERNEL_TAGS = ("sign", "sine", "additive")

_ANTISYM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HoeffdingParts:
    """Projection grid u (p x n) and centered residual grid vbar (p x M)."""

    u: np.ndarray
    vbar: np.ndarray
    mode: str
    n: int

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}: expected one of {MODES}")
        if self.u.shape[1] != self.n or self.vbar.shape[1] != pair_count(self.n):
            raise ValueError("grid shapes do not match the sample count")
        if self.u.shape[0] != self.vbar.shape[0]:
            raise ValueError("u and vbar disagree on the variable count")

    @property
    def p(self) -> int:
        return self.u.shape[0]

    @property
    def m(self) -> int:
        return self.vbar.shape[1]


def _rank_u(values: np.ndarray) -> np.ndarray:
    # rank in [1, n] within each row (no ties by DataMatrix contract)
    n = values.shape[1]
    ranks = np.argsort(np.argsort(values, axis=1), axis=1) + 1
    return (2.0 * ranks - n - 1.0) / (n - 1.0)


def hoeffding_parts(data: DataMatrix, mode: str = "exact_cdf") -> HoeffdingParts:
    """Split the sign grid of a data matrix into projections and residuals."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}: expected one of {MODES}")
    if mode == "exact_cdf":
        u = 2.0 * marginal_cdf(data.marginal, data.values) - 1.0
    else:
        u = _rank_u(data.values)
    signs = kernels().pair_signs(data.values).astype(np.float64)
    i_idx, j_idx = pair_indices(data.n)
    vbar = kernels().pair_residuals(signs, u, i_idx, j_idx)
    return HoeffdingParts(u=u, vbar=vbar, mode=mode, n=data.n)


def h_matrix(parts: HoeffdingParts) -> SymmetricMatrix:
    """Gram matrix of the centered residual grid, normalized by M."""
    return gram_symmetric(parts.vbar, denom=parts.m)


def a_matrix(data: DataMatrix, parts: HoeffdingParts) -> SymmetricMatrix:
    """Low-rank remainder: full correlation matrix minus the residual Gram.

    Assembled from the decomposition itself (projection-difference Gram plus
    the symmetrized cross term), not by subtraction, so it can be checked
    against ``tau - h`` independently.
    """
    i_idx, j_idx = pair_indices(data.n)
    w = parts.u[:, i_idx] - parts.u[:, j_idx]
    m = parts.m
    dense = (w @ w.T) / m
    cross = (parts.vbar @ w.T) / m
    dense += cross + cross.T
    p = dense.shape[0]
    return SymmetricMatrix(order=p, tril=dense[np.tril_indices(p)])


@dataclass(frozen=True)
class KernelSpec:
    """Bounded antisymmetric pairwise kernel phi: R^2 -> R."""

    tag: str
    fn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    bound: float


def builtin_kernel(tag: str) -> KernelSpec:
    if tag == "sign":
        return KernelSpec(tag="sign", fn=lambda x, y: np.sign(x - y), bound=1.0)
    if tag == "sine":
        return KernelSpec(tag="sine", fn=lambda x, y: np.sin(np.pi * (x - y)), bound=1.0)
    if tag == "additive":
        return KernelSpec(tag="additive", fn=lambda x, y: x - y, bound=1.0)
    raise ValueError(f"unknown kernel {tag!r}: expected one of {KERNEL_TAGS}")


def check_antisymmetry(
    kernel: KernelSpec,
    marginal: str = "uniform01",
    samples: int = 512,
    seed: int = 0,
    tol: float = _ANTISYM_TOL,
) -> None:
    """Spot-check phi(x, y) = -phi(y, x) and |phi| <= bound on random points."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    x = _draw(rng, marginal, samples)
    y = _draw(rng, marginal, samples)
    fwd = kernel.fn(x, y)
    if np.max(np.abs(fwd + kernel.fn(y, x))) > tol:
        raise ValueError(f"kernel {kernel.tag!r} fails the antisymmetry check")
    if np.max(np.abs(fwd)) > kernel.bound + tol:
        raise ValueError(f"kernel {kernel.tag!r} exceeds its declared bound")


def conditional_mean_fn(
    kernel: KernelSpec, marginal: str
) -> Callable[[np.ndarray], np.ndarray] | None:
    """Closed-form x -> E[phi(x, Y)] when one is known, else None."""
    if kernel.tag == "sign":
        return lambda x: 2.0 * marginal_cdf(marginal, x) - 1.0
    if marginal == "uniform01":
        if kernel.tag == "sine":
            return lambda x: -2.0 * np.cos(np.pi * x) / np.pi
        if kernel.tag == "additive":
            return lambda x: x - 0.5
    return None


def _quadrature_mean_fn(
    kernel: KernelSpec, nodes: int = 256
) -> Callable[[np.ndarray], np.ndarray]:
    # fixed-order Gauss-Legendre on [0, 1]; deterministic, uniform01 only
    t, w = np.polynomial.legendre.leggauss(nodes)
    t = (t + 1.0) / 2.0
    w = w / 2.0

    def mean(x: np.ndarray) -> np.ndarray:
        flat = np.asarray(x, dtype=np.float64).reshape(-1)
        vals = kernel.fn(flat[:, None], t[None, :]) @ w
        return vals.reshape(np.shape(x))

    return mean


def kernel_pair_values(data: DataMatrix, kernel: KernelSpec) -> np.ndarray:
    """phi evaluated on every sample pair, (p, M) float64, canonical order."""
    i_idx, j_idx = pair_indices(data.n)
    return np.asarray(
        kernel.fn(data.values[:, i_idx], data.values[:, j_idx]), dtype=np.float64
    )


def kernel_tau(data: DataMatrix, kernel: KernelSpec) -> SymmetricMatrix:
    """Correlation-style matrix with phi in place of the comparison sign."""
    return gram_symmetric(kernel_pair_values(data, kernel), denom=pair_count(data.n))


def kernel_parts(data: DataMatrix, kernel: KernelSpec) -> HoeffdingParts:
    """Decomposition of a generalized kernel grid with exact projections.

    Uses the closed-form conditional mean when known, else a fixed
    Gauss-Legendre rule (uniform01 marginal only).
    """
    mean_fn = conditional_mean_fn(kernel, data.marginal)
    if mean_fn is None:
        if data.marginal != "uniform01":
            raise ValueError(
                f"no conditional mean available for kernel {kernel.tag!r} "
                f"on marginal {data.marginal!r}"
            )
        mean_fn = _quadrature_mean_fn(kernel)
    u = np.asarray(mean_fn(data.values), dtype=np.float64)
    pair_vals = kernel_pair_values(data, kernel)
    i_idx, j_idx = pair_indices(data.n)
    vbar = kernels().pair_residuals(pair_vals, u, i_idx, j_idx)
    return HoeffdingParts(u=u, vbar=vbar, mode="exact_cdf", n=data.n)


def kernel_h_matrix(data: DataMatrix, kernel: KernelSpec) -> SymmetricMatrix:
    """Residual Gram matrix of a generalized kernel grid."""
    return h_matrix(kernel_parts(data, kernel))


@dataclass(frozen=True)
class AlphaEstimate:
    """Monte-Carlo estimate of the residual variance with its standard error."""

    value: float
    stderr: float
    samples: int


def alpha_coefficient(
    kernel: KernelSpec,
    marginal: str = "uniform01",
    mc_samples: int = 100_000,
    seed: int = 0,
    inner_samples: int = 2048,
) -> AlphaEstimate:
    """Estimate alpha = E[(phi - E[phi|x] - E[phi|y])^2] by Monte Carlo.

    Closed-form conditional means are used for the sign kernel (any
    marginal) and the additive kernel on uniform01.  Otherwise the
    conditional means are themselves estimated: outer samples are processed
    in chunks, each chunk drawing two fresh inner panels of
    ``inner_samples`` points; multiplying the two independently-centered
    residuals keeps the squared-residual estimator unbiased, and the
    standard error comes from the spread of the chunk means.
    """
    if mc_samples < 10_000:
        raise ValueError("need mc_samples >= 10000")
    check_antisymmetry(kernel, marginal, seed=seed)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    x = _draw(rng, marginal, mc_samples)
    y = _draw(rng, marginal, mc_samples)
    phi = kernel.fn(x, y)

    closed_form = kernel.tag == "sign" or (
        kernel.tag == "additive" and marginal == "uniform01"
    )
    if closed_form:
        mean_fn = conditional_mean_fn(kernel, marginal)
        residual = phi - mean_fn(x) + mean_fn(y)
        squares = residual * residual
        value = float(np.mean(squares))
        stderr = float(np.std(squares, ddof=1) / np.sqrt(mc_samples))
        return AlphaEstimate(value=value, stderr=stderr, samples=mc_samples)

    chunk = 500
    n_chunks = mc_samples // chunk
    chunk_means = np.empty(n_chunks)
    for c in range(n_chunks):
        sl = slice(c * chunk, (c + 1) * chunk)
        xs, ys, ps = x[sl], y[sl], phi[sl]
        panel_a = _draw(rng, marginal, inner_samples)
        panel_b = _draw(rng, marginal, inner_samples)
        ua_x = kernel.fn(xs[:, None], panel_a[None, :]).mean(axis=1)
        ua_y = kernel.fn(ys[:, None], panel_a[None, :]).mean(axis=1)
        ub_x = kernel.fn(xs[:, None], panel_b[None, :]).mean(axis=1)
        ub_y = kernel.fn(ys[:, None], panel_b[None, :]).mean(axis=1)
        chunk_means[c] = np.mean((ps - ua_x + ua_y) * (ps - ub_x + ub_y))
    value = float(np.mean(chunk_means))
    stderr = float(np.std(chunk_means, ddof=1) / np.sqrt(n_chunks))
    return AlphaEstimate(value=value, stderr=stderr, samples=n_chunks * chunk)
