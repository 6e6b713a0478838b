"""Kernel backend selection: numba-jitted loops or a pure-numpy fallback.

The pairwise hot kernels (sign grids, concordance counting, residual grids)
exist in two interchangeable implementations:

* ``_kernels_numba`` -- ``@njit`` loops, parallel over independent output
  entries, so results do not depend on the thread count.
* ``_kernels_numpy`` -- vectorized numpy, used when numba is unavailable or
  explicitly requested.

Selection order: the ``KENDALL_RMT_BACKEND`` environment variable
(``"numba"`` or ``"numpy"``), else numba when importable, else numpy.
Integer-valued kernels are bit-identical across both backends.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

ENV_VAR = "KENDALL_RMT_BACKEND"
BACKENDS = ("numba", "numpy")

_active: str | None = None


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _resolve_default() -> str:
    requested = os.environ.get(ENV_VAR, "").strip().lower()
    if requested:
        if requested not in BACKENDS:
            raise ValueError(
                f"{ENV_VAR}={requested!r}: expected one of {BACKENDS}"
            )
        if requested == "numba" and not _numba_importable():
            raise ImportError(f"{ENV_VAR}=numba but numba cannot be imported")
        return requested
    return "numba" if _numba_importable() else "numpy"


def active_backend() -> str:
    """Name of the backend currently answering kernel calls."""
    global _active
    if _active is None:
        _active = _resolve_default()
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}: expected one of {BACKENDS}")
    if name == "numba" and not _numba_importable():
        raise ImportError("numba backend requested but numba cannot be imported")
    _active = name


@contextmanager
def use_backend(name: str):
    """Temporarily switch backends (used by tests and the benchmark)."""
    previous = active_backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernels():
    """Module object holding the active kernel implementations."""
    if active_backend() == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return mod


def set_num_threads(count: int) -> None:
    """Cap numba's worker threads; a no-op on the numpy backend.

    Kernels assign each output entry to exactly one worker, so changing the
    thread count changes wall time only, never numerical output.
    """
    if count < 1:
        raise ValueError("thread count must be >= 1")
    if active_backend() == "numba":
        import numba

        numba.set_num_threads(min(count, numba.config.NUMBA_NUM_THREADS))
