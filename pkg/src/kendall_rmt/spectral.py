"""Symmetric eigendecomposition, empirical spectral distributions, distances.

The eigensolver contract is backward-stable reconstruction
(``||M - Q L Q^T||_F <= 1e-9 * order * ||M||_F``) and orthonormal
eigenvectors; LAPACK's symmetric driver meets it.  Distribution distances are
exact sup-norm evaluations over the jump points of the step CDFs, both-sided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kendall import SymmetricMatrix

MIN_IMAG = 1e-9


def tol_eig(order: int, max_entry: float) -> float:
    """Scale-aware floor below which eigenvalues count as zero."""
    return 1e-9 * order * abs(max_entry)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted eigenvalues plus the shape parameters of their source matrix."""

    eigenvalues: np.ndarray
    p: int
    n: int | None = None
    source: str = "custom"

    def __post_init__(self):
        eigs = np.asarray(self.eigenvalues, dtype=np.float64)
        if eigs.shape != (self.p,):
            raise ValueError("eigenvalue count must equal the matrix order")
        if np.any(np.diff(eigs) < 0):
            raise ValueError("eigenvalues must be sorted ascending")
        if not np.all(np.isfinite(eigs)):
            raise ValueError("eigenvalues must be finite")
        eigs = eigs.copy()
        eigs.setflags(write=False)
        object.__setattr__(self, "eigenvalues", eigs)

    @property
    def q(self) -> float | None:
        """Linear-regime aspect ratio p/n."""
        return None if self.n is None else self.p / self.n

    @property
    def q_prime(self) -> float | None:
        """Quadratic-regime aspect ratio 2p/(n(n-1))."""
        if self.n is None:
            return None
        return 2.0 * self.p / (self.n * (self.n - 1))

    def mean(self) -> float:
        return float(self.eigenvalues.mean())

    def save_csv(self, path) -> None:
        with open(path, "w") as fh:
            n = "none" if self.n is None else self.n
            q = "none" if self.q is None else repr(self.q)
            qp = "none" if self.q_prime is None else repr(self.q_prime)
            fh.write(f"# n={n} p={self.p} q={q} q_prime={qp} source={self.source}\n")
            for x in self.eigenvalues:
                fh.write(repr(x) + "\n")

    @classmethod
    def load_csv(cls, path) -> "Spectrum":
        with open(path) as fh:
            header = fh.readline().strip()
            if not header.startswith("#"):
                raise ValueError("missing spectrum header line")
            fields = dict(item.split("=", 1) for item in header.lstrip("# ").split())
            values = [float(line) for line in fh if line.strip()]
        n = None if fields["n"] == "none" else int(fields["n"])
        return cls(
            eigenvalues=np.array(values),
            p=int(fields["p"]),
            n=n,
            source=fields["source"],
        )


def eigen_symmetric(
    matrix: SymmetricMatrix, n: int | None = None, source: str = "custom"
) -> Spectrum:
    """Full ascending spectrum of a symmetric matrix."""
    eigs = np.linalg.eigvalsh(matrix.to_dense())
    return Spectrum(eigenvalues=eigs, p=matrix.order, n=n, source=source)


def eigen_decomposition(matrix: SymmetricMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""
    return np.linalg.eigh(matrix.to_dense())


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Step CDF with jumps 1/count at each support point."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.sort(np.asarray(self.points, dtype=np.float64))
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def count(self) -> int:
        return self.points.size

    def cdf(self, x) -> np.ndarray:
        """Right-continuous CDF: fraction of points <= x."""
        return np.searchsorted(self.points, np.asarray(x), side="right") / self.count

    def cdf_left(self, x) -> np.ndarray:
        """Left limit of the CDF: fraction of points < x."""
        return np.searchsorted(self.points, np.asarray(x), side="left") / self.count

    def histogram(self, bins: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Counts over ``bins`` equal-width bins (Freedman-Diaconis default,
        floored at 30)."""
        if bins is None:
            q75, q25 = np.percentile(self.points, [75, 25])
            width = 2.0 * (q75 - q25) / self.count ** (1.0 / 3.0)
            span = self.points[-1] - self.points[0]
            bins = 30 if width <= 0 else max(30, int(np.ceil(span / width)))
        counts, edges = np.histogram(self.points, bins=bins)
        return edges, counts


def esd(spectrum: Spectrum) -> EmpiricalDistribution:
    """Empirical spectral distribution: mass 1/p at each eigenvalue."""
    return EmpiricalDistribution(points=spectrum.eigenvalues)


def ks_distance(emp: EmpiricalDistribution, law) -> float:
    """Sup-norm distance between a step CDF and a law CDF.

    Evaluated at both sides of every jump of either distribution; ``law``
    must expose ``cdf(x)``, ``atom_mass`` and ``atom_location``.
    """
    pts = emp.points
    if law.atom_mass > 0.0:
        pts = np.append(pts, law.atom_location)
    law_right = law.cdf(pts)
    law_left = law_right - np.where(
        (law.atom_mass > 0.0) & (pts == law.atom_location), law.atom_mass, 0.0
    )
    d_right = np.abs(emp.cdf(pts) - law_right)
    d_left = np.abs(emp.cdf_left(pts) - law_left)
    return float(max(d_right.max(), d_left.max()))


def ks_distance_empirical(a: EmpiricalDistribution, b: EmpiricalDistribution) -> float:
    """Exact two-sample sup-norm distance between step CDFs."""
    pts = np.concatenate([a.points, b.points])
    d_right = np.abs(a.cdf(pts) - b.cdf(pts))
    d_left = np.abs(a.cdf_left(pts) - b.cdf_left(pts))
    return float(max(d_right.max(), d_left.max()))


def _check_off_axis(z: complex) -> None:
    if abs(z.imag) < MIN_IMAG:
        raise ValueError(f"need |Im z| >= {MIN_IMAG}")


def stieltjes_empirical(spectrum: Spectrum, z: complex) -> complex:
    """Normalized resolvent trace from the spectrum: mean of 1/(z - eig)."""
    _check_off_axis(z)
    return complex(np.mean(1.0 / (z - spectrum.eigenvalues)))


def resolvent(matrix: SymmetricMatrix, z: complex) -> np.ndarray:
    """(z I - M)^{-1} by direct LU factorization with partial pivoting."""
    _check_off_axis(z)
    dense = matrix.to_dense().astype(np.complex128)
    lhs = z * np.eye(matrix.order, dtype=np.complex128) - dense
    return np.linalg.solve(lhs, np.eye(matrix.order, dtype=np.complex128))


def numerical_rank(matrix: SymmetricMatrix) -> int:
    """Count of eigenvalues above the spectral-rank cutoff
    order * eps * max|eigenvalue|."""
    eigs = np.linalg.eigvalsh(matrix.to_dense())
    scale = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    if scale == 0.0:
        return 0
    cutoff = matrix.order * np.finfo(np.float64).eps * scale
    return int(np.count_nonzero(np.abs(eigs) > cutoff))
