"""Artifact writers: atomic file replacement and figure-ready data files."""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .laws import MPLawSpec, density_cdf_grid
from .spectral import Spectrum


def atomic_write_text(path, text: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_histogram_json(path, spectrum: Spectrum, bins: int | None = None) -> None:
    """Histogram view of a spectrum with its shape metadata."""
    from .spectral import esd

    edges, counts = esd(spectrum).histogram(bins)
    write_json(
        path,
        {
            "edges": [float(e) for e in edges],
            "counts": [int(c) for c in counts],
            "n": spectrum.n,
            "p": spectrum.p,
            "q": spectrum.q,
            "q_prime": spectrum.q_prime,
            "source": spectrum.source,
        },
    )


def write_law_grid_csv(path, spec: MPLawSpec, points: int = 513) -> None:
    """(x, density, cdf) rows for plot overlays, with the law parameters."""
    xs, pdf, cdf = density_cdf_grid(spec, points=points)
    lines = [
        f"# q={spec.q!r} scale={spec.scale!r} shift={spec.shift!r} "
        f"atom={spec.atom_mass!r}",
        "x,density,cdf",
    ]
    for x, d, c in zip(xs, pdf, cdf):
        lines.append(f"{x!r},{d!r},{c!r}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_spectrum_csv(path, spectrum: Spectrum) -> None:
    lines = []
    n = "none" if spectrum.n is None else spectrum.n
    q = "none" if spectrum.q is None else repr(spectrum.q)
    qp = "none" if spectrum.q_prime is None else repr(spectrum.q_prime)
    lines.append(f"# n={n} p={spectrum.p} q={q} q_prime={qp} source={spectrum.source}")
    lines.extend(repr(x) for x in spectrum.eigenvalues)
    atomic_write_text(path, "\n".join(lines) + "\n")


PLOT_STUB = """\
#!/usr/bin/env python3
\"\"\"Plot a spectrum histogram JSON against a law grid CSV.

Usage: python plot_stub.py <histogram.json> <law_grid.csv> [out.png]
\"\"\"
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

hist = json.load(open(sys.argv[1]))
grid = np.genfromtxt(sys.argv[2], delimiter=",", names=True, comments="#")
edges = np.array(hist["edges"])
counts = np.array(hist["counts"], dtype=float)
density = counts / counts.sum() / np.diff(edges)
plt.bar(edges[:-1], density, width=np.diff(edges), align="edge", alpha=0.6)
plt.plot(grid["x"], grid["density"], "r-", lw=2)
plt.xlabel("eigenvalue")
plt.ylabel("density")
out = sys.argv[3] if len(sys.argv) > 3 else "figure.png"
plt.savefig(out, dpi=150)
print(out)
"""


def write_plot_stub(path) -> None:
    atomic_write_text(path, PLOT_STUB)
