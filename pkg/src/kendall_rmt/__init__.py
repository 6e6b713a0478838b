"""Spectral laboratory for Kendall rank-correlation matrices.

Builds correlation matrices from pairwise comparison signs, splits them via
the Hoeffding decomposition, and checks the empirical eigenvalue
distributions against their Marchenko-Pastur limit laws in both the linear
(p ~ n) and quadratic (p ~ n^2) scaling regimes.
"""

from ._backend import active_backend, set_backend, use_backend
from .datagen import DataMatrix, generate
from .hoeffding import (
    AlphaEstimate,
    HoeffdingParts,
    KernelSpec,
    a_matrix,
    alpha_coefficient,
    builtin_kernel,
    h_matrix,
    hoeffding_parts,
    kernel_h_matrix,
    kernel_tau,
)
from .kendall import (
    PairSignMatrix,
    SymmetricMatrix,
    pair_count,
    pair_signs,
    tau_fast,
    tau_from_signs,
    tau_naive,
)
from .laws import MPLawSpec, law_for_regime
from .spectral import (
    EmpiricalDistribution,
    Spectrum,
    eigen_symmetric,
    esd,
    ks_distance,
    ks_distance_empirical,
    numerical_rank,
    resolvent,
    stieltjes_empirical,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaEstimate",
    "DataMatrix",
    "EmpiricalDistribution",
    "HoeffdingParts",
    "KernelSpec",
    "MPLawSpec",
    "PairSignMatrix",
    "Spectrum",
    "SymmetricMatrix",
    "a_matrix",
    "active_backend",
    "alpha_coefficient",
    "builtin_kernel",
    "eigen_symmetric",
    "esd",
    "generate",
    "h_matrix",
    "hoeffding_parts",
    "kernel_h_matrix",
    "kernel_tau",
    "ks_distance",
    "ks_distance_empirical",
    "law_for_regime",
    "numerical_rank",
    "pair_count",
    "pair_signs",
    "resolvent",
    "set_backend",
    "stieltjes_empirical",
    "tau_fast",
    "tau_from_signs",
    "tau_naive",
    "use_backend",
]
