import numpy as np
import pytest

from kendall_rmt import _backend


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile (or load cached) jitted kernels once so timed tests are stable
    if _backend.active_backend() == "numba":
        from kendall_rmt import _kernels_numba

        _kernels_numba.warm_up()


def tau_bruteforce(values: np.ndarray) -> np.ndarray:
    """Pure-python concordance sums; independent of every package route."""
    p, n = values.shape
    m = n * (n - 1) // 2
    out = np.empty((p, p))
    for k in range(p):
        for l in range(p):
            total = 0
            for i in range(n):
                for j in range(i + 1, n):
                    a = 1 if values[k, i] > values[k, j] else -1
                    b = 1 if values[l, i] > values[l, j] else -1
                    total += a * b
            out[k, l] = total / m
    return out
