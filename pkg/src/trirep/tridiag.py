"""Symmetric tridiagonal operators: regular recursion, spectra, Gauss rules.

A :class:`TridiagonalRep` stores the matrix of a wave operator in the form

    <phi_m| H - E |phi_n> = scale * [(a_n - z) delta_nm + b_n delta_{m,n+1} + b_{n-1} delta_{m,n-1}]

``scale`` is the positive (or signed) prefactor the model divided out; the
generic routines below never look at it.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from . import _kernels
from .errors import DegenerateCouplingError, ParameterError


@dataclass(frozen=True)
class TridiagonalRep:
    diag: np.ndarray
    offdiag: np.ndarray
    shift: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float).ravel()
        o = np.asarray(self.offdiag, dtype=float).ravel()
        if d.size < 1:
            raise ParameterError("a tridiagonal representation needs at least one row")
        if o.size != d.size - 1:
            raise ParameterError(f"offdiag must have length {d.size - 1}, got {o.size}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(o))):
            raise ParameterError("tridiagonal entries must be finite")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", o)

    @property
    def size(self):
        return self.diag.size

    def truncate(self, n):
        return TridiagonalRep(self.diag[:n], self.offdiag[: n - 1], self.shift, self.scale)

    def dense(self):
        """Dense ``(a - z) I + offdiagonals`` (without ``scale``)."""
        m = np.diag(self.diag - self.shift)
        m += np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)
        return m


@dataclass(frozen=True)
class RecursionSolution:
    """Regular solution of the three-term recursion.

    ``coeffs[n] * exp(logscale[n])`` is the coefficient with ``f_0 = 1``.
    ``rescaled`` is filled by models that map f_n onto a polynomial family.
    """

    coeffs: np.ndarray
    logscale: np.ndarray
    rescaled: np.ndarray = field(default=None)

    def values(self):
        return self.coeffs * np.exp(self.logscale)


@dataclass(frozen=True)
class EigenData:
    eigenvalues: np.ndarray
    first_components: np.ndarray
    vectors: np.ndarray = field(default=None, repr=False)


def forward_recursion(rep, z=None, nterms=None):
    """Regular solution seeded by ``(a_0 - z) f_0 + b_0 f_1 = 0`` with ``f_0 = 1``.

    ``z`` defaults to ``rep.shift``; ``nterms`` defaults to ``rep.size``.
    Raises :class:`DegenerateCouplingError` if some ``b_n`` needed for the
    requested terms is exactly zero.
    """
    if rep.size < 2 and (nterms or rep.size) > 1:
        raise ParameterError("forward recursion needs a representation of size >= 2")
    z = rep.shift if z is None else float(z)
    nterms = rep.size if nterms is None else int(nterms)
    if nterms > rep.size:
        raise ParameterError(f"requested {nterms} terms from a size-{rep.size} representation")
    f, logscale, bad = _kernels.forward_recursion(rep.diag, np.append(rep.offdiag, 1.0), z, nterms)
    if bad >= 0:
        raise DegenerateCouplingError(bad, f"b_{bad} = 0: the recursion decouples at n = {bad}")
    return RecursionSolution(f, logscale)


def eigendecompose(rep):
    """All eigenvalues of the truncated matrix (shift excluded) with the
    squared first components of the normalised eigenvectors."""
    if rep.size == 1:
        return EigenData(rep.diag.copy(), np.ones(1), np.ones((1, 1)))
    w, v = linalg.eigh_tridiagonal(rep.diag, rep.offdiag, lapack_driver="stev")
    first = v[0, :] ** 2
    return EigenData(w, first, v)


def gauss_quadrature(rep, moment0):
    """Golub-Welsch nodes and weights of the Jacobi matrix ``rep``."""
    if not moment0 > 0:
        raise ParameterError(f"zeroth moment must be positive, got {moment0}")
    eig = eigendecompose(rep)
    return eig.eigenvalues, moment0 * eig.first_components


# -- Jacobi matrices of the classical families --------------------------------


def laguerre_jacobi_matrix(nu, size):
    """Orthonormal recurrence of ``x^nu e^-x`` on (0, inf)."""
    n = np.arange(size, dtype=float)
    off = -np.sqrt((n[:-1] + 1) * (n[:-1] + nu + 1))
    return TridiagonalRep(2 * n + nu + 1, off)


def laguerre_moment0(nu):
    from .specfun import lgamma

    return float(np.exp(lgamma(nu + 1)))


def jacobi_jacobi_matrix(mu, nu, size):
    """Orthonormal recurrence of ``(1-x)^mu (1+x)^nu`` on (-1, 1).

    Built from the ``(1+x)/2`` multiplication relation, so x = 2J - 1.
    """
    from .orthopoly import jacobi_multiplication

    D, L, U = jacobi_multiplication(size, mu, nu)
    off = np.sqrt(U[:-1] * L[1:])[: size - 1]
    return TridiagonalRep(2 * D[:size] - 1, 2 * off)


def jacobi_moment0(mu, nu):
    from .specfun import log_gamma_ratio

    return 2 ** (mu + nu + 1) * float(np.exp(log_gamma_ratio([mu + 1, nu + 1], [mu + nu + 2])))
