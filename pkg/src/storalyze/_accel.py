"""Kernel acceleration toggle.

The hot loops (cycle detection, wavelet convolution) are written as plain
functions over numpy arrays and compiled with numba when it is available.
Set ``STORALYZE_NUMBA=0`` in the environment to select the pure-numpy
fallback: the same functions run uncompiled and produce identical output.

``benchmarks/bench_kernels.py`` times both paths side by side.
"""
import os


def _requested() -> bool:
    flag = os.environ.get("STORALYZE_NUMBA", "1").strip().lower()
    return flag not in {"0", "false", "off", "no"}


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _requested()


def maybe_njit(func):
    """Return ``numba.njit(func)`` on the compiled path, else ``func``."""
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func
