"""Adaptive quadrature over a basis' configuration space, split at breakpoints."""

import warnings

import numpy as np
from scipy import integrate

from .errors import AccuracyError

_LAGUERRE_X = (0.0, 0.05, 0.25, 1.0, 3.0, 8.0, 16.0, 30.0, 50.0, 80.0, 120.0, 200.0)
_JACOBI_X = (-1.0, -0.99999, -0.999, -0.99, -0.9, -0.6, -0.2, 0.2, 0.6, 0.9, 0.99, 0.999, 0.99999, 1.0)


def pieces(spec):
    """Consecutive integration intervals in the physical coordinate.

    Breakpoints are placed at fixed x values and pulled back through the
    coordinate map, so they follow the basis scale automatically.
    """
    from .models.base import r_of_x

    xs = _JACOBI_X if spec.is_jacobi else _LAGUERRE_X + (np.inf,)
    with np.errstate(divide="ignore", over="ignore"):
        rs = np.asarray(r_of_x(spec, np.asarray(xs)), dtype=float)
    rs = np.where(np.isnan(rs), np.inf, rs)
    lo = -np.inf if spec.on_line else 0.0
    rs = np.unique(np.clip(np.concatenate([rs, [lo, np.inf]]), lo, np.inf))
    return list(zip(rs[:-1], rs[1:]))


def integrate_pieces(fn, intervals, epsabs=1e-13, epsrel=1e-11, limit=200, tol=None):
    """Sum of scipy ``quad`` over the intervals; returns (value, error bound).

    Raises :class:`AccuracyError` if the summed error bound exceeds ``tol``
    (absolute, default: no check).
    """
    total = 0.0
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in intervals:
            v, e = integrate.quad(fn, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit)
            total += v
            err += e
    if tol is not None and not err <= tol:
        raise AccuracyError(f"quadrature did not reach {tol:g}", total, err)
    return total, err
