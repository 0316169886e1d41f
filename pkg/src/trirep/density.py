"""Weight functions of orthogonal-polynomial families from their recursion coefficients.

The truncated Jacobi matrix gives a discrete Gauss measure (nodes z_i,
weights w_i).  Dividing each weight by the local node spacing gives point
samples of the density, rho(z_i) ~ w_i / dz_i, which are then smoothed onto
a regular grid.  Two smoothers are offered:

``"local-linear"`` (default)
    Gaussian-kernel local-linear regression of log rho.  Exact for weights
    whose logarithm is linear (e^{-z}, constants), and free of the boundary
    bias of a plain kernel sum.
``"kde"``
    Weighted Gaussian kernel density estimate of the discrete measure.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import EmptySupportError, ParameterError
from .tridiag import gauss_quadrature

METHODS = ("local-linear", "kde")
SPACING_CAP = 0.5


class DeformationWarning(UserWarning):
    """The gamma term dominates the recursion coefficients."""


@dataclass(frozen=True)
class DensityCurve:
    """Smoothed density on a grid.

    ``total_mass`` is the mass of the discrete Gauss measure (the zeroth
    moment).  ``rho`` is normalised so its trapezoidal integral equals the
    part of that mass whose nodes fall inside the grid, which is all of it
    for the default range.
    """

    z_grid: np.ndarray
    rho: np.ndarray
    total_mass: float
    bandwidth: float
    nodes: np.ndarray
    weights: np.ndarray


def default_bandwidth(nodes, weights):
    """Rule-of-thumb bandwidth 1.06 * sigma * N^(-1/5), sigma the spread of the measure.

    The weighted spread is used rather than the spread of the bare nodes:
    for unbounded supports the largest nodes carry negligible mass but would
    otherwise inflate the bandwidth by an order of magnitude.
    """
    z = np.asarray(nodes, dtype=float)
    w = np.asarray(weights, dtype=float)
    mean = np.average(z, weights=w)
    sigma = np.sqrt(np.average((z - mean) ** 2, weights=w))
    return 1.06 * float(sigma) * z.size ** (-0.2)


def point_density(nodes, weights):
    """Spacing-normalised samples w_i / dz_i, dz_i the half-distance between neighbours.

    The two end samples use a one-sided gap and are biased low; callers
    fitting a smooth curve should drop them.
    """
    z = np.asarray(nodes, dtype=float)
    gaps = np.diff(z)
    dz = np.empty_like(z)
    dz[1:-1] = 0.5 * (gaps[1:] + gaps[:-1])
    dz[0], dz[-1] = gaps[0], gaps[-1]
    return np.asarray(weights, dtype=float) / dz


def _local_linear(z, logp, grid, h):
    # weighted least squares of logp on (1, z - g) at every grid point g;
    # h may vary with g
    d = z[None, :] - grid[:, None]
    h = np.broadcast_to(np.asarray(h, dtype=float), grid.shape)[:, None]
    k = np.exp(-0.5 * (d / h) ** 2)
    s0 = k.sum(axis=1)
    s1 = (k * d).sum(axis=1)
    s2 = (k * d * d).sum(axis=1)
    t0 = (k * logp).sum(axis=1)
    t1 = (k * d * logp).sum(axis=1)
    det = s0 * s2 - s1 * s1
    with np.errstate(invalid="ignore", divide="ignore"):
        out = (s2 * t0 - s1 * t1) / det
        # too few nodes in the window for a slope: fall back to the local mean
        flat = ~(np.abs(det) > 1e-12 * s0 * s2) | ~np.isfinite(out)
        out[flat] = t0[flat] / s0[flat]
    return out


def local_bandwidth(nodes, grid, h, cap=SPACING_CAP):
    """Global bandwidth h capped at ``cap`` times the local node spacing.

    Near hard edges the nodes crowd together and log rho bends sharply; a
    single global width would average across that curvature.
    """
    gaps = np.diff(nodes)
    return np.minimum(h, cap * np.interp(grid, 0.5 * (nodes[1:] + nodes[:-1]), gaps))


def _kde(z, w, grid, h):
    d = (grid[:, None] - z[None, :]) / h
    return (np.exp(-0.5 * d * d) @ w) / (h * np.sqrt(2 * np.pi))


def _check_deformation(rep, deformation):
    from .orthopoly import jacobi_multiplication

    gamma, mu, nu = map(float, deformation)
    N = rep.size
    growth = abs(gamma) * (N + (mu + nu + 1) / 2) ** 2
    D, L, U = jacobi_multiplication(N, mu, nu)
    base = max(np.max(np.abs(D)), np.max(np.sqrt(np.abs(U[:-1] * L[1:]))))
    if growth > base:
        warnings.warn(f"|gamma| (N + (mu+nu+1)/2)^2 = {growth:.3g} exceeds the undeformed coefficient "
                      f"scale {base:.3g}; the gamma term dominates the recursion",
                      DeformationWarning, stacklevel=3)


def estimate_density(rep, n_points=401, smoothing=None, z_range=None, moment0=1.0,
                     method="local-linear", deformation=None):
    """Smoothed weight function of the polynomials generated by ``rep``.

    Parameters
    ----------
    rep : TridiagonalRep
        Symmetric recursion (Jacobi) matrix; at least 10 rows.
    n_points : int
        Number of grid points.
    smoothing : float, optional
        Gaussian bandwidth.  Defaults to :func:`default_bandwidth` of the nodes.
    z_range : (float, float), optional
        Grid interval.  Defaults to the span of the nodes carrying more than
        1e-15 of the mass, widened by three bandwidths.
    moment0 : float
        Zeroth moment of the measure, i.e. the total mass.
    method : {"local-linear", "kde"}
    deformation : (gamma, mu, nu), optional
        Parameters of a deformed Jacobi recursion; a
        :class:`DeformationWarning` is issued when the gamma term outgrows
        the undeformed coefficients.

    Returns
    -------
    DensityCurve

    Raises
    ------
    EmptySupportError
        If ``z_range`` contains none of the quadrature nodes.
    """
    if rep.size < 10:
        raise ParameterError(f"density estimation needs at least 10 recursion rows, got {rep.size}")
    if method not in METHODS:
        raise ParameterError(f"unknown method {method!r}; choose from {METHODS}")
    if int(n_points) != n_points or n_points < 2:
        raise ParameterError(f"n_points must be an integer >= 2, got {n_points}")
    if deformation is not None:
        _check_deformation(rep, deformation)
    nodes, weights = gauss_quadrature(rep, moment0)
    h = default_bandwidth(nodes, weights) if smoothing is None else float(smoothing)
    if not h > 0:
        raise ParameterError(f"smoothing bandwidth must be positive, got {smoothing}")
    lo_edge, hi_edge = nodes[0] - 3 * h, nodes[-1] + 3 * h
    if z_range is None:
        # far nodes of unbounded supports carry no visible mass
        heavy = np.nonzero(weights > 1e-15 * weights.sum())[0]
        z_range = (nodes[heavy[0]] - 3 * h, nodes[heavy[-1]] + 3 * h)
    a, b = map(float, z_range)
    if not a < b:
        raise ParameterError(f"z_range must satisfy lo < hi, got {z_range}")
    inside = (nodes >= a) & (nodes <= b)
    if not inside.any():
        raise EmptySupportError(f"no quadrature node lies in [{a}, {b}]; nodes span [{nodes[0]}, {nodes[-1]}]")
    grid = np.linspace(a, b, int(n_points))

    if method == "kde":
        rho = _kde(nodes, weights, grid, h)
    else:
        zi = nodes[1:-1]
        logp = np.log(point_density(nodes, weights)[1:-1])
        rho = np.exp(_local_linear(zi, logp, grid, local_bandwidth(nodes, grid, h)))
        lo_edge, hi_edge = _edges(nodes, weights, zi, logp, h, lo_edge, hi_edge)
    rho = np.where((grid >= lo_edge) & (grid <= hi_edge) & np.isfinite(rho), rho, 0.0)

    area = integrate.trapezoid(rho, grid)
    if area > 0:
        rho *= weights[inside].sum() / area
    return DensityCurve(grid, rho, float(weights.sum()), h, nodes, weights)


def _edges(nodes, weights, zi, logp, h, lo, hi):
    """Support ends implied by the first and last quadrature cells.

    Node 0 stands for the mass between the support edge and the midpoint to
    node 1, so the edge sits w_0 / rho(z_0) below that midpoint.
    """
    ends = np.array([nodes[0], nodes[-1]])
    rho_end = np.exp(_local_linear(zi, logp, ends, local_bandwidth(nodes, ends, h)))
    left = 0.5 * (nodes[0] + nodes[1]) - weights[0] / rho_end[0]
    right = 0.5 * (nodes[-1] + nodes[-2]) + weights[-1] / rho_end[1]
    # never more than one node gap beyond the outermost nodes
    lo = max(lo, nodes[0] - (nodes[1] - nodes[0]))
    hi = min(hi, nodes[-1] + (nodes[-1] - nodes[-2]))
    left = min(max(left, lo), nodes[0]) if np.isfinite(left) else lo
    right = max(min(right, hi), nodes[-1]) if np.isfinite(right) else hi
    return left, right


def support_edges(curve, fraction=0.01):
    """Grid points where the cumulative mass first reaches ``fraction`` and ``1 - fraction``."""
    z, rho = curve.z_grid, curve.rho
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (rho[1:] + rho[:-1]) * np.diff(z))])
    cum /= cum[-1]
    lo = np.searchsorted(cum, fraction)
    hi = np.searchsorted(cum, 1 - fraction)
    return float(z[lo]), float(z[min(hi, z.size - 1)])
