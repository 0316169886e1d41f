"""Independent numerical checks: quadrature of matrix elements and Numerov shooting.

Nothing here uses the closed-form matrix elements or spectra; the
quadrature works from the basis functions and the potential alone, and the
shooting solver from the potential alone.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from . import _kernels
from ._quad import integrate_pieces, pieces
from .errors import AccuracyError, BracketError, ParameterError, WrongLevelError
from .models.api import basis_spec, effective_potential
from .models.base import basis_values


@dataclass(frozen=True)
class QuadratureConfig:
    """Adaptive quadrature settings.

    Attributes
    ----------
    limit : int
        Maximum number of subintervals per piece (at least 16).
    truncation : float
        Largest |coordinate| integrated; ``inf`` keeps the exact infinite range.
    tol : float
        Relative tolerance requested from the integrator.
    """

    limit: int = 400
    truncation: float = math.inf
    tol: float = 1e-11

    def __post_init__(self):
        if self.limit < 16:
            raise ParameterError(f"quadrature limit must be >= 16, got {self.limit}")
        if not self.tol > 0:
            raise ParameterError(f"quadrature tolerance must be positive, got {self.tol}")
        if not self.truncation > 0:
            raise ParameterError(f"truncation must be positive, got {self.truncation}")


def _intervals(spec, cfg):
    out = []
    T = cfg.truncation
    for a, b in pieces(spec):
        a, b = max(a, -T), min(b, T)
        if b > a:
            out.append((a, b))
    return out


def _check_pair(m, n):
    for k in (m, n):
        if int(k) != k or k < 0:
            raise ParameterError(f"basis indices must be non-negative integers, got {k}")
    return int(m), int(n)


def _operator_potential(case, r, radial_operator):
    """Potential part of H on the integration points.

    ``radial_operator=True`` routes line problems through the radial operator
    with the centrifugal term forced to zero, as a cross-check of the 1-D path.
    """
    if not radial_operator or case.handler.radial:
        return effective_potential(case, r)
    with np.errstate(over="ignore", invalid="ignore"):
        v = np.asarray(case.handler.potential(case, r), dtype=float)
    ell = 0
    return v + ell * (ell + 1) / (2 * np.where(r == 0, 1.0, r) ** 2)


def quad_matrix_element(case, m, n, E, cfg=QuadratureConfig(), radial_operator=False):
    """<phi_m | H - E | phi_n> by adaptive quadrature.

    The second derivative of phi_n is assembled analytically from the
    polynomial derivative identities and the chain rule.  Raises
    :class:`AccuracyError` when the error bound exceeds ``cfg.tol`` times
    the integrand scale.
    """
    m, n = _check_pair(m, n)
    spec = basis_spec(case, E)
    top = max(m, n)

    def f(r):
        rr = np.array([r])
        phi, _, d2 = basis_values(spec, top, rr, derivatives=True)
        veff = _operator_potential(case, rr, radial_operator)[0]
        if phi[m, 0] == 0.0:
            return 0.0
        v = phi[m, 0] * (-0.5 * d2[n, 0] + (veff - E) * phi[n, 0])
        return v if math.isfinite(v) else 0.0

    val, err = integrate_pieces(f, _intervals(spec, cfg), epsrel=cfg.tol, limit=cfg.limit)
    _check_error(val, err, cfg, spec)
    return val


def overlap(case, m, n, cfg=QuadratureConfig(), E=None):
    """<phi_m | phi_n> by adaptive quadrature (E only for energy-dependent bases)."""
    m, n = _check_pair(m, n)
    spec = basis_spec(case, E)
    top = max(m, n)

    def f(r):
        phi = basis_values(spec, top, np.array([r]))
        return phi[m, 0] * phi[n, 0]

    val, err = integrate_pieces(f, _intervals(spec, cfg), epsrel=cfg.tol, limit=cfg.limit)
    _check_error(val, err, cfg, spec)
    return val


def _check_error(val, err, cfg, spec):
    bound = max(1e-8, 1e3 * cfg.tol) * max(1.0, abs(val), spec.lam**2)
    if not err <= bound:
        raise AccuracyError("quadrature did not converge", val, err)


def quad_matrix(case, E, N, cfg=QuadratureConfig(), radial_operator=False):
    """All elements <phi_m|H - E|phi_n>, 0 <= m, n < N, in one vector-valued pass.

    Returns ``(H, err)`` with the symmetrised matrix and the error bound.
    """
    spec = basis_spec(case, E)
    top = N - 1

    def f(r):
        rr = np.array([r])
        phi, _, d2 = basis_values(spec, top, rr, derivatives=True)
        veff = _operator_potential(case, rr, radial_operator)[0]
        if not np.any(phi[:, 0]):
            return np.zeros((N, N))
        col = -0.5 * d2[:, 0] + (veff - E) * phi[:, 0]
        out = np.outer(phi[:, 0], col)
        return np.where(np.isfinite(out), out, 0.0)

    H = np.zeros((N, N))
    err = 0.0
    for a, b in _intervals(spec, cfg):
        v, e = integrate.quad_vec(f, a, b, epsabs=1e-13, epsrel=cfg.tol, norm="max", limit=cfg.limit * 10)
        H += v
        err += e
    return H, err


def overlap_matrix(case, N, cfg=QuadratureConfig(), E=None):
    spec = basis_spec(case, E)

    def f(r):
        phi = basis_values(spec, N - 1, np.array([r]))[:, 0]
        return np.outer(phi, phi)

    S = np.zeros((N, N))
    err = 0.0
    for a, b in _intervals(spec, cfg):
        v, e = integrate.quad_vec(f, a, b, epsabs=1e-14, epsrel=cfg.tol, norm="max", limit=cfg.limit * 10)
        S += v
        err += e
    return S, err


@dataclass(frozen=True)
class TridiagonalityReport:
    """Quadrature versus formula for the leading N x N block.

    ``offband`` is max |<m|H-E|n>| over |m-n| >= 2 divided by the leading
    matrix scale; ``band_rel`` the largest relative deviation over |m-n| <= 1.
    """

    offband: float
    band_rel: float
    quad_error: float
    lead: float


def tridiagonality_report(case, E, N=9, cfg=QuadratureConfig()):
    from .models.api import matrix_elements

    rep = matrix_elements(case, E, N)
    F = rep.scale * rep.dense()
    Q, err = quad_matrix(case, E, N, cfg)
    band = np.abs(np.subtract.outer(np.arange(N), np.arange(N))) <= 1
    lead = abs(rep.scale) * max(abs(rep.diag[0] - rep.shift), abs(rep.offdiag[0]) if N > 1 else 0.0, 1.0)
    # entries that vanish in the formula are measured against the leading scale
    denom = np.maximum(np.abs(F), 1e-6 * lead)
    return TridiagonalityReport(float(np.abs(Q[~band]).max() / lead) if (~band).any() else 0.0,
                                float((np.abs(Q - F)[band] / denom[band]).max()), float(err), float(lead))


def spectrum_report(case, levels=3, cfg=None):
    """Pairs (formula, Numerov) for the first ``levels`` closed-form levels."""
    from .models.api import bound_spectrum

    cfg = cfg or ShootingConfig()
    E = bound_spectrum(case, levels - 1).energies
    return [(float(e), float(numerov_bound_energy(case, k, cfg))) for k, e in enumerate(E)]


# -- Numerov shooting ----------------------------------------------------------


@dataclass(frozen=True)
class ShootingConfig:
    """Numerov shooting settings.

    Attributes
    ----------
    step : float or None
        Grid step.  ``None`` divides the domain into ``points`` intervals.
    points : int
        Number of grid intervals when ``step`` is not given.
    domain : tuple or None
        Fixed integration interval; ``None`` picks it from the decay of the
        wavefunction beyond the outermost turning point.
    bracket : tuple or None
        Energy interval known to contain the level; ``None`` searches for one.
    tol : float
        Relative energy tolerance of the final root solve.
    decay : float
        Required WKB decay exponent between the turning point and the domain end.
    richardson : bool
        Combine the step h and h/2 solutions to cancel the h^4 error term.
    """

    step: float = None
    points: int = 20000
    domain: tuple = None
    bracket: tuple = None
    tol: float = 1e-13
    decay: float = 40.0
    richardson: bool = True

    def __post_init__(self):
        if self.step is not None and not self.step > 0:
            raise ParameterError(f"grid step must be positive, got {self.step}")
        if self.points < 100:
            raise ParameterError(f"need at least 100 grid intervals, got {self.points}")
        if self.bracket is not None and not self.bracket[0] < self.bracket[1]:
            raise ParameterError(f"energy bracket must satisfy lo < hi, got {self.bracket}")
        if self.domain is not None and not self.domain[0] < self.domain[1]:
            raise ParameterError(f"domain must satisfy lo < hi, got {self.domain}")
        if not self.tol > 0:
            raise ParameterError(f"tolerance must be positive, got {self.tol}")


class _Shooter:
    """Numerov integration of u'' = 2 (V_eff - E) u for one model."""

    _FAR = 1e6

    def __init__(self, case, cfg):
        self.case = case
        self.cfg = cfg
        self.line = not case.handler.radial
        if self.line:
            s = np.geomspace(1e-6, self._FAR, 6000)
            self.probe = np.concatenate([-s[::-1], [0.0], s])
        else:
            self.probe = np.geomspace(1e-7, self._FAR, 12000)
        self.vprobe = self.veff(self.probe)
        ends = [self.veff(np.array([self._FAR]))[0]]
        if self.line:
            ends.append(self.veff(np.array([-self._FAR]))[0])
        # a far-end value this large means the well is confining
        self.threshold = min(ends) if min(ends) < 1e8 else math.inf

    def veff(self, r):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            v = effective_potential(self.case, r)
        return np.where(np.isnan(v), np.inf, v)

    # -- domain from the turning points ---------------------------------
    def _turning(self, E, side):
        allowed = np.nonzero(self.vprobe < E)[0]
        if not allowed.size:
            return None
        i = allowed[-1] if side > 0 else allowed[0]
        j = i + side
        if j < 0 or j >= self.probe.size:
            return self.probe[i]
        f = lambda r: self.veff(np.array([r]))[0] - E
        a, b = sorted((self.probe[i], self.probe[j]))
        if np.sign(f(a)) == np.sign(f(b)):
            return self.probe[i]
        return optimize.brentq(f, a, b, xtol=1e-14 * max(1.0, abs(a)))

    def _decay_end(self, rt, E, side):
        offs = np.geomspace(1e-6, 1e5, 6000)
        r = rt + side * offs
        if not self.line:
            r = r[r > 0]
        g = np.sqrt(np.maximum(2 * (self.veff(r) - E), 0.0))
        cum = integrate.cumulative_trapezoid(g, offs[: r.size], initial=0.0)
        k = np.searchsorted(cum, self.cfg.decay)
        return r[min(k, r.size - 1)]

    def domain(self, E):
        if self.cfg.domain is not None:
            return self.cfg.domain
        right = self._turning(E, +1)
        if right is None:
            return None
        hi = self._decay_end(right, E, +1)
        if not self.line:
            return (0.0, hi)
        left = self._turning(E, -1)
        return (self._decay_end(left, E, -1), hi)

    def grid(self, dom, refine=1):
        a, b = dom
        if self.cfg.step is not None:
            M = max(int(math.ceil((b - a) / self.cfg.step)), 100)
        else:
            M = self.cfg.points
        M *= refine
        return np.linspace(a, b, M + 1)

    # -- integrations --------------------------------------------------------
    def _seed(self, r, E):
        """Frobenius series for the regular radial solution on [0, r0].

        r^2 g is fitted in t = r/r0 on Chebyshev nodes, so the series
        recursion runs in t and stays well scaled.  Starting Numerov away
        from r = 0 avoids the loss of order caused by fractional exponents.
        """
        h = r[1] - r[0]
        k0 = int(np.clip(round(0.01 * (r[-1] - r[0]) / h), 2, (r.size - 1) // 10))
        r0 = 2.0 * r[k0 + 1]
        t = 0.5 * (1 - np.cos(np.pi * (np.arange(48) + 0.5) / 48))
        y = (r0 * t) ** 2 * 2 * (self.veff(r0 * t) - E)
        e = np.polynomial.chebyshev.cheb2poly(np.polynomial.chebyshev.chebfit(2 * t - 1, y, 16))
        e = _shift_poly(e)
        s = 0.5 + math.sqrt(max(0.25 + e[0], 0.0))
        b = np.zeros(40)
        b[0] = 1.0
        with np.errstate(all="ignore"):
            for k in range(1, 40):
                m = min(k, len(e) - 1)
                b[k] = e[1 : m + 1] @ b[k - 1 : k - m - 1 : -1] if k - m - 1 >= 0 else e[1 : m + 1] @ b[k - 1 :: -1]
                b[k] /= k * (2 * s + k - 1)
            x = r[: k0 + 2] / r0
            head = x**s * np.polyval(b[::-1], x)
        if not np.all(np.isfinite(head)):
            return 2, np.concatenate([[0.0], r[1:3] ** s, np.zeros(max(k0 - 1, 0))])[:4]
        return k0, head

    @staticmethod
    def _stable(g, h):
        """Index range where the Numerov recurrence is stable (h^2 g / 12 < 1/2).

        Outside it the exact solution is negligible, so the integration is
        started and stopped at its edges with the solution set to zero beyond.
        """
        ok = h * h * g / 12 < 0.5
        idx = np.nonzero(ok)[0]
        if not idx.size:
            return 0, 0
        lo = idx[0]
        bad = np.nonzero(~ok[lo:])[0]
        hi = lo + bad[0] - 1 if bad.size else g.size - 1
        return lo, hi

    def outward(self, r, E):
        h = r[1] - r[0]
        g = 2 * (self.veff(r) - E)
        u = np.zeros_like(r)
        lo, hi = self._stable(g, h)
        if self.line:
            if hi - lo >= 3:
                u[lo : hi + 1] = _kernels.numerov(np.ascontiguousarray(g[lo : hi + 1]), h, 0.0, 1e-30)
            return u
        k0, head = self._seed(r, E)
        u[: k0 + 2] = head
        hi = max(hi, k0 + 2)
        u[k0 : hi + 1] = _kernels.numerov(np.ascontiguousarray(g[k0 : hi + 1]), h, head[k0], head[k0 + 1])
        return u

    def inward(self, r, E):
        h = r[1] - r[0]
        g = 2 * (self.veff(r[::-1]) - E)
        u = np.zeros_like(r)
        lo, hi = self._stable(g, h)
        if hi - lo >= 3:
            u[lo : hi + 1] = _kernels.numerov(np.ascontiguousarray(g[lo : hi + 1]), h, 0.0, 1e-30)
        return u[::-1]

    def count(self, E):
        """Number of Dirichlet levels below E (Sturm count of the outward solution)."""
        dom = self.domain(E)
        if dom is None:
            return 0
        r = self.grid(dom)
        u = self.outward(r, E)
        return _kernels.count_nodes(u, 1, r.size - 1)

    def matching(self, r, E, m):
        uo = self.outward(r, E)
        ui = self.inward(r, E)
        po = uo[m - 1 : m + 2] / np.linalg.norm(uo[m - 1 : m + 2])
        pi = ui[m - 1 : m + 2] / np.linalg.norm(ui[m - 1 : m + 2])
        return po[2] * pi[0] - po[0] * pi[2], uo, ui


def _bracket(sh, level, cfg):
    if cfg.bracket is not None:
        lo, hi = map(float, cfg.bracket)
        clo, chi = sh.count(lo), sh.count(hi)
        if chi == clo:
            raise BracketError(f"no eigenvalue in the energy bracket {cfg.bracket}")
        if not clo <= level < chi:
            raise WrongLevelError(f"bracket {cfg.bracket} holds levels {clo}..{chi - 1}, not level {level}")
        return lo, hi
    vmin = float(np.min(sh.vprobe[np.isfinite(sh.vprobe)]))
    lo = vmin - 1e-9 * max(1.0, abs(vmin))
    top = sh.threshold
    if math.isfinite(top):
        # creep towards the continuum threshold until enough levels sit below
        for j in range(1, 60):
            hi = top - (top - lo) * 2.0 ** (-j)
            if sh.count(hi) > level:
                return lo, hi
        raise BracketError(f"fewer than {level + 1} bound levels below the threshold {top}")
    span = max(1.0, abs(vmin))
    for _ in range(200):
        hi = lo + span
        if sh.count(hi) > level:
            return lo, hi
        span *= 2
    raise BracketError("could not bracket the requested level")


def _narrow(sh, level, lo, hi, rel=1e-7):
    while hi - lo > rel * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if sh.count(mid) > level:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _solve_on_grid(sh, r, m, level, lo, hi, tol):
    f = lambda E: sh.matching(r, E, m)[0]
    flo, fhi = f(lo), f(hi)
    width = hi - lo
    for _ in range(20):
        if np.sign(flo) != np.sign(fhi):
            break
        lo, hi = lo - width, hi + width
        width *= 2
        flo, fhi = f(lo), f(hi)
    else:
        raise BracketError(f"matching function keeps one sign on [{lo}, {hi}]")
    E = optimize.brentq(f, lo, hi, xtol=tol * max(1.0, abs(lo)), rtol=4 * np.finfo(float).eps, maxiter=200)
    _, uo, ui = sh.matching(r, E, m)
    nodes = _kernels.count_nodes(uo, 1, m + 1) + _kernels.count_nodes(ui, m, r.size - 1)
    if nodes != level:
        raise WrongLevelError(f"converged state has {nodes} node(s), expected {level}")
    return E


def numerov_bound_energy(case, level_hint, cfg=ShootingConfig()):
    """Bound-state energy with ``level_hint`` nodes by Numerov shooting.

    Outward and inward solutions are matched (Wronskian of the normalised
    solutions, i.e. equal logarithmic derivatives) at the grid point closest
    to the outermost classical turning point.
    """
    level = int(level_hint)
    if level != level_hint or level < 0:
        raise ParameterError(f"level must be a non-negative integer, got {level_hint}")
    sh = _Shooter(case, cfg)
    lo, hi = _narrow(sh, level, *_bracket(sh, level, cfg))
    dom = sh.domain(hi)
    if dom is None:
        raise BracketError("no classically allowed region at the bracket energy")
    results = []
    for refine in ((1, 2) if cfg.richardson else (1,)):
        r = sh.grid(dom, refine)
        rt = sh._turning(hi, +1)
        m = int(np.clip(np.searchsorted(r, rt), 3, r.size - 4))
        results.append(_solve_on_grid(sh, r, m, level, lo, hi, cfg.tol))
    if cfg.richardson:
        return (16 * results[1] - results[0]) / 15
    return results[0]


def _shift_poly(c):
    """Power coefficients in t of sum c_j (2t - 1)^j."""
    out = np.zeros(len(c))
    for j, cj in enumerate(c):
        out[: j + 1] += cj * np.polynomial.polynomial.polypow([-1.0, 2.0], j)
    return out
