"""Kernel acceleration switch.

Hot loops are written once as plain Python/numpy and compiled with
``numba.njit`` unless ``TRIREP_DISABLE_NUMBA`` is set to a true value or
numba cannot be imported.  The uncompiled function stays reachable through
``kernel.py_func`` either way, so tests and the benchmark can run both paths.
"""

import os

_FLAG = os.environ.get("TRIREP_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


class _Plain:
    """Wrap a Python function so it exposes ``py_func`` like a numba dispatcher."""

    def __init__(self, fn):
        self.py_func = fn
        self.__name__ = fn.__name__
        self.__doc__ = fn.__doc__

    def __call__(self, *args):
        return self.py_func(*args)


def kernel(fn):
    """Compile ``fn`` in nopython mode when numba is enabled."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return _Plain(fn)


def backend():
    return "numba" if HAVE_NUMBA else "numpy"
