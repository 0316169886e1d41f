"""Public operations on :class:`ModelCase` objects."""

import math

import numpy as np

from .._quad import integrate_pieces, pieces
from ..errors import DomainError, ParameterError, RangeError
from .base import basis_values, check_domain


def _as_int(N, what="N", minimum=1):
    if int(N) != N or N < minimum:
        raise ParameterError(f"{what} must be an integer >= {minimum}, got {N}")
    return int(N)


def matrix_elements(case, E, N):
    """Tridiagonal representation of ``H - E`` in the case's basis, rows 0..N-1."""
    return case.handler.rep(case, E, _as_int(N))


def expansion_coeffs(case, E, N, method="auto"):
    """Coefficients f_0..f_{N-1} of the regular solution at energy E.

    ``method="auto"`` uses the closed form when the case has one at this E
    and falls back to the forward recursion otherwise.
    """
    return case.handler.expansion(case, E, _as_int(N), method)


def bound_spectrum(case, n_max):
    """Closed-form levels 0..n_max, cut where the formula's validity window ends."""
    return case.handler.spectrum(case, _as_int(n_max, "n_max", 0))


def bound_state(case, level):
    """Energy, basis and coefficient vector of a bound level."""
    return case.handler.bound_state(case, level)


def basis_spec(case, E=None):
    """The :class:`BasisSpec` of the case (energy-dependent bases need E)."""
    return case.handler.basis(case, E)


def basis_eval(case, n, r, E=None):
    """phi_n(r) including its normalisation constant.

    Bases whose indices are tied to the energy (Coulomb-2, Morse-1,
    Hulthen-1/2, Rosen-Morse) need ``E``.
    """
    n = _as_int(n, "n", 0)
    spec = basis_spec(case, E)
    scalar = np.ndim(r) == 0
    r = check_domain(spec, r)
    out = basis_values(spec, n, np.atleast_1d(r))[n]
    return float(out[0]) if scalar else out.reshape(np.shape(r))


def potential_eval(case, r):
    """V(r) of the case (without the centrifugal term)."""
    h = case.handler
    scalar = np.ndim(r) == 0
    r = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(r)):
        raise DomainError("coordinate values must be finite")
    if h.radial and np.any(r < 0):
        raise DomainError("radial coordinate must satisfy r >= 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.asarray(h.potential(case, r), dtype=float)
    if not np.all(np.isfinite(v)):
        raise DomainError("the potential is singular at r = 0")
    return float(v) if scalar else v


def effective_potential(case, r):
    """V(r) + ell(ell+1)/(2 r^2) for radial cases, V(y) on the line."""
    h = case.handler
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = np.asarray(h.potential(case, r), dtype=float)
        ell = h.ell(case)
        if h.radial and ell:
            v = v + ell * (ell + 1) / (2 * r * r)
    return v


def _series(spec, coeffs, r):
    phi = basis_values(spec, len(coeffs) - 1, r)
    return coeffs @ phi


def wavefunction_eval(case, r_grid, level=None, E=None, N=None):
    """Bound-state or continuum wavefunction on a grid.

    Give ``level`` for a bound state: the closed-form eigenfunction,
    normalised to unit L2 norm by quadrature.  Give ``E`` and ``N`` for the
    truncated series sum f_n phi_n (unnormalised, f_0 = 1).
    """
    if (level is None) == (E is None):
        raise ParameterError("pass exactly one of level (bound state) or E (series)")
    if level is not None:
        if int(level) != level or level < 0:
            raise RangeError(f"level must be a non-negative integer, got {level}")
        bs = bound_state(case, int(level))
        r = check_domain(bs.basis, r_grid)
        norm = bound_norm(bs)
        return _series(bs.basis, bs.coeffs, np.atleast_1d(r)) / norm
    N = _as_int(N if N is not None else 0, "N", 2)
    spec = basis_spec(case, E)
    r = check_domain(spec, r_grid)
    f = expansion_coeffs(case, E, N).coeffs
    return _series(spec, f, np.atleast_1d(r))


def bound_norm(bs):
    """L2 norm of the unnormalised bound-state series."""
    def sq(r):
        v = _series(bs.basis, bs.coeffs, np.array([r]))[0]
        return v * v

    val, _ = integrate_pieces(sq, pieces(bs.basis))
    return math.sqrt(val)
