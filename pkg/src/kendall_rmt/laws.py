"""Affine Marchenko-Pastur laws: density, CDF, Stieltjes transform, moments.

Implements the family shift + scale * Y_q, where Y_q has the standard
Marchenko-Pastur density

    rho(y) = sqrt((y_plus - y)(y - y_minus)) / (2 pi q y)

on [y_minus, y_plus] = [(1 - sqrt(q))^2, (1 + sqrt(q))^2], plus a point mass
1 - 1/q at zero when q > 1.  The closed-form CDF and Stieltjes transform are
standard textbook expressions; both are pinned against direct quadrature of
the density (with square-root edge substitutions) in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

REGIMES = ("linear", "quadratic")


@dataclass(frozen=True)
class MPLawSpec:
    """Law of shift + scale * Y_q with Y_q Marchenko-Pastur of parameter q."""

    q: float
    scale: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError("q must be positive")
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")

    @property
    def base_edges(self) -> tuple[float, float]:
        root = np.sqrt(self.q)
        return ((1.0 - root) ** 2, (1.0 + root) ** 2)

    @property
    def support(self) -> tuple[float, float]:
        lo, hi = self.base_edges
        return (self.shift + self.scale * lo, self.shift + self.scale * hi)

    @property
    def atom_mass(self) -> float:
        return max(0.0, 1.0 - 1.0 / self.q)

    @property
    def atom_location(self) -> float:
        return self.shift

    def density(self, x) -> np.ndarray:
        """Continuous-part density (the atom is reported separately)."""
        x = np.asarray(x, dtype=np.float64)
        y = (x - self.shift) / self.scale
        lo, hi = self.base_edges
        inside = (y > lo) & (y < hi) & (y > 0.0)
        out = np.zeros_like(y)
        ys = y[inside]
        out[inside] = np.sqrt((hi - ys) * (ys - lo)) / (
            2.0 * np.pi * self.q * ys * self.scale
        )
        return out if out.ndim else float(out)

    def _base_cdf_cont(self, y: np.ndarray) -> np.ndarray:
        q = self.q
        lo, hi = self.base_edges
        full = min(1.0, 1.0 / q)
        out = np.zeros_like(y)
        out[y >= hi] = full
        inside = (y > lo) & (y < hi)
        ys = y[inside]
        cos_phi = np.clip((1.0 + q - ys) / (2.0 * np.sqrt(q)), -1.0, 1.0)
        phi = np.arccos(cos_phi)
        if q == 1.0:
            vals = (phi + np.sin(phi)) / np.pi
        else:
            ratio = (1.0 + np.sqrt(q)) / abs(1.0 - np.sqrt(q))
            angle = 2.0 / abs(1.0 - q) * np.arctan(ratio * np.tan(phi / 2.0))
            vals = (
                (1.0 + q) * phi
                + 2.0 * np.sqrt(q) * np.sin(phi)
                - (1.0 - q) ** 2 * angle
            ) / (2.0 * np.pi * q)
        out[inside] = vals
        return out

    def cdf(self, x) -> np.ndarray:
        """Atom-inclusive CDF, closed form."""
        x = np.asarray(x, dtype=np.float64)
        y = (x - self.shift) / self.scale
        out = self._base_cdf_cont(np.atleast_1d(y))
        out = out + np.where(np.atleast_1d(x) >= self.shift, self.atom_mass, 0.0)
        out = np.clip(out, 0.0, 1.0)
        return out.reshape(np.shape(x)) if np.ndim(x) else float(out[0])

    def integrate_density(self, x_lo: float, x_hi: float, moment: int = 0) -> float:
        """Adaptive quadrature of x^moment times the continuous density.

        Substitutes y = edge +/- t^2 near both support edges so the
        square-root behavior (and the q = 1 inner singularity) integrates
        smoothly.
        """
        lo, hi = self.support
        a = max(x_lo, lo)
        b = min(x_hi, hi)
        if b <= a:
            return 0.0
        mid = min(max(0.5 * (lo + hi), a), b)

        def weighted(x: float) -> float:
            return float(self.density(x)) * x**moment

        total = 0.0
        if a < mid:  # lower piece, substitute x = lo + t^2
            t0, t1 = np.sqrt(a - lo), np.sqrt(mid - lo)
            val, _ = quad(
                lambda t: weighted(lo + t * t) * 2.0 * t,
                t0,
                t1,
                epsabs=1e-12,
                epsrel=1e-12,
                limit=200,
            )
            total += val
        if mid < b:  # upper piece, substitute x = hi - s^2
            s0, s1 = np.sqrt(hi - b), np.sqrt(hi - mid)
            val, _ = quad(
                lambda s: weighted(hi - s * s) * 2.0 * s,
                s0,
                s1,
                epsabs=1e-12,
                epsrel=1e-12,
                limit=200,
            )
            total += val
        return total

    def cdf_quadrature(self, x: float) -> float:
        """Atom-inclusive CDF by direct integration (cross-check path)."""
        x = float(x)
        atom = self.atom_mass if x >= self.shift else 0.0
        return atom + self.integrate_density(-np.inf, x)

    def stieltjes(self, z: complex) -> complex:
        """g(z) = E[1/(z - X)], branch with g(z) ~ 1/z at infinity."""
        z = complex(z)
        lo, hi = self.support
        if z.imag == 0.0:
            on_continuous = lo <= z.real <= hi
            on_atom = self.atom_mass > 0.0 and z.real == self.atom_location
            if on_continuous or on_atom:
                raise ValueError("z lies on the support")
        w = (z - self.shift) / self.scale
        q = self.q
        if w == 0:
            # only reachable for q < 1 (z = shift is off-support then)
            return complex(-1.0 / (1.0 - q) / self.scale)
        b_lo, b_hi = self.base_edges
        root = np.sqrt(w - b_hi) * np.sqrt(w - b_lo)
        g_base = (w + q - 1.0 - root) / (2.0 * q * w)
        return complex(g_base / self.scale)

    def moment(self, k: int) -> float:
        """E[(shift + scale * Y_q)^k] for k in 1..4 via Narayana sums."""
        if k not in (1, 2, 3, 4):
            raise ValueError("moments implemented for k in 1..4")
        q = self.q
        base = {
            0: 1.0,
            1: 1.0,
            2: 1.0 + q,
            3: 1.0 + 3.0 * q + q * q,
            4: 1.0 + 6.0 * q + 6.0 * q * q + q**3,
        }
        total = 0.0
        for j in range(k + 1):
            total += math.comb(k, j) * self.shift ** (k - j) * self.scale**j * base[j]
        return total


def law_for_regime(n: int, p: int, regime: str) -> MPLawSpec:
    """Limit law of the spectrum for the requested scaling regime.

    linear (p ~ q n):      1/3 + (2/3) Y_{p/n}
    quadratic (p ~ q' n^2/2):  (1/3) Y_{2p/(n(n-1))}
    """
    if n < 2 or p < 1:
        raise ValueError("need n >= 2 and p >= 1")
    if regime == "linear":
        return MPLawSpec(q=p / n, scale=2.0 / 3.0, shift=1.0 / 3.0)
    if regime == "quadratic":
        return MPLawSpec(q=2.0 * p / (n * (n - 1)), scale=1.0 / 3.0, shift=0.0)
    raise ValueError(f"unknown regime {regime!r}: expected one of {REGIMES}")


def density_cdf_grid(
    spec: MPLawSpec, points: int = 513, pad: float = 0.05
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluation grid spanning the support with a small margin."""
    lo, hi = spec.support
    width = hi - lo
    xs = np.linspace(lo - pad * width, hi + pad * width, points)
    return xs, spec.density(xs), np.asarray(spec.cdf(xs))


def wishart_mp_sample(q: float, order: int, seed: int = 0) -> np.ndarray:
    """Eigenvalues of a white Wishart matrix with aspect ratio ~ q.

    Independent of the data-matrix generator; used to validate the law
    family against simulation.
    """
    if q <= 0 or order < 1:
        raise ValueError("need q > 0 and order >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n = max(1, round(order / q))
    g = rng.standard_normal((order, n))
    return np.linalg.eigvalsh(g @ g.T / n)
