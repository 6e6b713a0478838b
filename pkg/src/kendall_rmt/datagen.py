"""Seeded generation of synthetic data matrices with continuous marginals.

Rows are variables, columns are samples.  Every marginal is absolutely
continuous, so within-row ties have probability zero; the constructor
enforces that and generation resamples the rare colliding entry (a float64
collision signals a broken generator, hence the hard retry cap).

Reproducibility: row k is drawn from the k-th child of
``numpy.random.SeedSequence(seed)``, so the matrix is a pure function of
(p, n, marginal, seed) and row generation could be parallelized without
changing the output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

MARGINALS = ("uniform01", "standard_gaussian", "standard_cauchy")

TIE_RETRY_CAP = 100


class TieError(RuntimeError):
    """Raised when resampling cannot clear duplicate values in a row."""


def _check_marginal(marginal: str) -> None:
    if marginal not in MARGINALS:
        raise ValueError(f"unknown marginal {marginal!r}: expected one of {MARGINALS}")


def marginal_cdf(marginal: str, x: np.ndarray) -> np.ndarray:
    """Closed-form CDF of a marginal, evaluated elementwise."""
    _check_marginal(marginal)
    x = np.asarray(x, dtype=np.float64)
    if marginal == "uniform01":
        return np.clip(x, 0.0, 1.0)
    if marginal == "standard_gaussian":
        return ndtr(x)
    return 0.5 + np.arctan(x) / np.pi


def _draw(rng: np.random.Generator, marginal: str, size: int) -> np.ndarray:
    if marginal == "uniform01":
        return rng.random(size)
    if marginal == "standard_gaussian":
        return rng.standard_normal(size)
    return rng.standard_cauchy(size)


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """p x n table of observations; rows = variables, columns = samples."""

    values: np.ndarray
    marginal: str
    seed: int | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D array")
        p, n = values.shape
        if p < 1:
            raise ValueError("need at least one variable (p >= 1)")
        if n < 2:
            raise ValueError("need at least two samples (n >= 2)")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        _check_marginal(self.marginal)
        for k in range(p):
            if np.unique(values[k]).size != n:
                raise ValueError(f"row {k} contains tied values")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def p(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    def save_csv(self, path) -> None:
        with open(path, "w") as fh:
            seed = "none" if self.seed is None else self.seed
            fh.write(f"# p={self.p} n={self.n} marginal={self.marginal} seed={seed}\n")
            for row in self.values:
                fh.write(",".join(repr(x) for x in row) + "\n")

    @classmethod
    def load_csv(cls, path) -> "DataMatrix":
        with open(path) as fh:
            header = fh.readline().strip()
            if not header.startswith("#"):
                raise ValueError("missing data-matrix header line")
            fields = dict(
                item.split("=", 1) for item in header.lstrip("# ").split()
            )
            rows = [
                [float(x) for x in line.strip().split(",")]
                for line in fh
                if line.strip()
            ]
        values = np.array(rows, dtype=np.float64)
        seed = None if fields.get("seed") in (None, "none") else int(fields["seed"])
        matrix = cls(values=values, marginal=fields["marginal"], seed=seed)
        if matrix.p != int(fields["p"]) or matrix.n != int(fields["n"]):
            raise ValueError("header dimensions do not match the stored rows")
        return matrix


def _fill_row(rng: np.random.Generator, marginal: str, n: int) -> np.ndarray:
    row = _draw(rng, marginal, n)
    for _ in range(TIE_RETRY_CAP):
        _, first_pos = np.unique(row, return_index=True)
        if first_pos.size == n:
            return row
        dup_mask = np.ones(n, dtype=bool)
        dup_mask[first_pos] = False
        row[dup_mask] = _draw(rng, marginal, int(dup_mask.sum()))
    raise TieError(
        f"could not clear tied values after {TIE_RETRY_CAP} resample rounds"
    )


def generate(p: int, n: int, marginal: str = "uniform01", seed: int = 0) -> DataMatrix:
    """Draw a p x n matrix of independent samples from the marginal.

    Deterministic in (p, n, marginal, seed); each row uses its own spawned
    RNG substream.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    _check_marginal(marginal)
    children = np.random.SeedSequence(seed).spawn(p)
    values = np.empty((p, n), dtype=np.float64)
    for k in range(p):
        values[k] = _fill_row(np.random.default_rng(children[k]), marginal, n)
    return DataMatrix(values=values, marginal=marginal, seed=seed)
