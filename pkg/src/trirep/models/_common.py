"""Handler base class and coefficient helpers shared by the model modules."""

import math
from dataclasses import dataclass

import numpy as np

from .. import _kernels
from ..errors import BoundaryError, ParameterError, RangeError
from ..orthopoly import cdh_coeffs, jacobi_multiplication, pollaczek_coeffs
from ..specfun import lgamma
from ..tridiag import TridiagonalRep, forward_recursion
from .base import ExpansionResult, SpectrumResult

REL_TOL = 1e-12


def close(a, b, tol=REL_TOL):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def require(cond, message):
    if not cond:
        raise ParameterError(message)


def lag_off(nu, N):
    """sqrt((n+1)(n+nu+1)) for n = 0..N-2."""
    n = np.arange(max(N - 1, 0), dtype=float)
    return np.sqrt((n + 1) * (n + nu + 1))


def jacobi_sym(mu, nu, N):
    """Symmetrised (1+x)/2 multiplication: diagonal D_n and off-diagonal sqrt(U_n L_{n+1})."""
    D, L, U = jacobi_multiplication(N, mu, nu)
    return D[:N], np.sqrt(U[: N - 1] * L[1:N])


def all_degrees(coeffs, t):
    """Rows y_0..y_n of a three-term recurrence at the scalar t."""
    p, q, s = (np.ascontiguousarray(c, dtype=float) for c in coeffs)
    return _kernels.three_term_all(p, q, s, np.array([float(t)]))[:, 0]


def gamma_sqrt_ratio(n, nu, invert=False):
    """sqrt(Gamma(n+1)/Gamma(n+nu+1)) (or its inverse) for an array n."""
    v = 0.5 * (lgamma(n + 1) - lgamma(n + nu + 1))
    return np.exp(-v if invert else v)


def pollaczek_all(N, mu, theta, x, hyperbolic=False):
    return all_degrees(pollaczek_coeffs(N - 1, mu, theta, hyperbolic), x)


def cdh_all(N, mu, a, b, x, modified=False):
    t = -x * x if modified else x * x
    return all_degrees(cdh_coeffs(N - 1, mu, a, b), t)


def cdh_branch(kappa, what):
    """Square-root argument and branch for a continuous dual Hahn closed form.

    ``kappa < 0`` selects S_n (real argument sqrt(-kappa)), ``kappa > 0`` the
    modified family; ``kappa == 0`` sits on the boundary between them.
    """
    if kappa == 0:
        raise BoundaryError(f"{what} = 0 is the boundary between the two closed-form branches")
    return math.sqrt(abs(kappa)), kappa > 0


def laguerre_cdh_rep(scale, nu, tau, extra, N):
    """Representation shared by the models whose expansion is a dual Hahn series.

    a_n = (2n+nu+1)(n+nu/2+1+tau) - n - ((nu+1)/2)^2 + extra
    b_n = -(n+nu/2+1+tau) sqrt((n+1)(n+nu+1))
    """
    n = np.arange(N, dtype=float)
    diag = (2 * n + nu + 1) * (n + nu / 2 + 1 + tau) - n - ((nu + 1) / 2) ** 2 + extra
    off = -(n[:-1] + nu / 2 + 1 + tau) * lag_off(nu, N)
    return TridiagonalRep(diag, off, 0.0, scale)


@dataclass(frozen=True)
class BoundState:
    """A bound level: energy, basis at the quantized parameters and the
    (finite) coefficient vector in that basis."""

    energy: float
    basis: object
    coeffs: np.ndarray
    case: object


class Handler:
    """Per-case behaviour.  Subclasses fill in the physics."""

    id = None
    required = ()
    optional = {}
    radial = True
    has_closed_form = False

    # -- parameters --------------------------------------------------------
    def validate(self, p, sign):
        unknown = set(p) - set(self.required) - set(self.optional)
        if unknown:
            raise ParameterError(f"{self.id.value}: unknown parameter(s) {sorted(unknown)}; "
                                 f"expected {list(self.required) + list(self.optional)}")
        missing = [k for k in self.required if k not in p]
        if missing:
            raise ParameterError(f"{self.id.value}: missing parameter(s) {missing}")
        out = {}
        for k in list(self.required) + list(self.optional):
            v = p.get(k, self.optional.get(k))
            if v is None:
                continue
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise ParameterError(f"{self.id.value}: parameter {k} must be a real number, got {v!r}") from None
            require(math.isfinite(v), f"{self.id.value}: parameter {k} must be finite")
            out[k] = v
        if "lam" in out:
            require(out["lam"] > 0, f"{self.id.value}: lam must be positive, got {out['lam']}")
        if "ell" in out:
            require(out["ell"] >= 0, f"{self.id.value}: ell must be non-negative, got {out['ell']}")
        if "nu" in out:
            require(out["nu"] > -1, f"{self.id.value}: nu must exceed -1, got {out['nu']}")
        self.check(out, sign)
        return out

    def check(self, p, sign):
        pass

    def ell(self, case):
        return case.params.get("ell", 0.0) if self.radial else 0.0

    def effective(self, case):
        """Parameters after applying the sign_choice map (identity by default)."""
        return dict(case.params)

    # -- physics -----------------------------------------------------------
    def check_energy(self, case, E):
        pass

    def basis(self, case, E):
        raise NotImplementedError

    def potential(self, case, r):
        raise NotImplementedError

    def rep(self, case, E, N):
        raise NotImplementedError

    def closed_form(self, case, E, N):
        """Raw closed-form f_n and the polynomial values P_n, or None."""
        return None

    def polynomials(self, case, E, f):
        """Map normalised coefficients onto the polynomial family (identity by default)."""
        return f

    def spectrum(self, case, n_max):
        raise NotImplementedError

    def bound_state(self, case, level):
        raise NotImplementedError

    # -- generic machinery ---------------------------------------------------
    def expansion(self, case, E, N, method="auto"):
        if method not in ("auto", "closed", "recursion"):
            raise ParameterError(f"method must be auto, closed or recursion, got {method!r}")
        self.check_energy(case, E)
        if method != "recursion":
            cf = self.closed_form(case, E, N) if self.has_closed_form else None
            if cf is not None:
                f, P = cf
                return ExpansionResult(f / f[0], P, float(f[0]), "closed")
            if method == "closed":
                raise ParameterError(f"{self.id.value}: no closed form at E = {E}")
        rep = self.rep(case, E, N)
        f = forward_recursion(rep).values()
        return ExpansionResult(f, self.polynomials(case, E, f), 1.0, "recursion")

    def level_index(self, case, level):
        if int(level) != level or level < 0:
            raise RangeError(f"level must be a non-negative integer, got {level}")
        spec = self.spectrum(case, int(level))
        if level >= len(spec.energies):
            raise RangeError(f"{self.id.value}: level {level} is outside the bound spectrum "
                             f"({len(spec.energies)} level(s))")
        return spec


def finite_series(handler, case, energy, level):
    """Coefficients of a terminating bound-state series (b_level = 0)."""
    if level == 0:
        return np.ones(1)
    rep = handler.rep(case, energy, level + 1)
    return forward_recursion(rep, nterms=level + 1).values()


def unit(level):
    v = np.zeros(level + 1)
    v[level] = 1.0
    return v


def empty_spectrum():
    return SpectrumResult(np.zeros(0), ())
