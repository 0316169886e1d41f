"""Classical and deformed orthogonal polynomial families.

Every family is evaluated by its forward three-term recurrence.  Arguments
``x`` may be scalars or arrays; scalars come back as Python floats.

Families
--------
* Laguerre ``L_n^nu(x)``
* Jacobi ``P_n^(mu,nu)(x)``
* Pollaczek ``P_n^mu(x, theta)`` with ``0 < theta < pi``
* hyperbolic Pollaczek ``P~_n^mu(x, theta) = P_n^mu(-ix, i theta)``, ``theta > 0``
* continuous dual Hahn ``S_n^mu(x; a, b)`` (3F2 normalisation, S_n(.)=1 at n=0)
* modified continuous dual Hahn ``S~_n^mu(x; a, b) = S_n^mu(-ix; a, b)``
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import _kernels
from .errors import AccuracyError, DomainError, ParameterError
from .specfun import abs_gamma, lgamma, log_abs_gamma, log_gamma_ratio


@dataclass(frozen=True)
class LaguerreParams:
    nu: float

    def __post_init__(self):
        if not self.nu > -1:
            raise ParameterError(f"Laguerre index nu must exceed -1, got {self.nu}")


@dataclass(frozen=True)
class JacobiParams:
    mu: float
    nu: float

    def __post_init__(self):
        if not (self.mu > -1 and self.nu > -1):
            raise ParameterError(f"Jacobi indices must exceed -1, got ({self.mu}, {self.nu})")


@dataclass(frozen=True)
class PollaczekParams:
    """Parameters for both Pollaczek families.

    ``hyperbolic`` selects the admissible theta range: (0, pi) for the
    trigonometric family, (0, inf) for the hyperbolic one.
    """

    mu: float
    theta: float
    hyperbolic: bool = False

    def __post_init__(self):
        if not self.mu > 0:
            raise ParameterError(f"Pollaczek index mu must be positive, got {self.mu}")
        if self.hyperbolic:
            if not self.theta > 0:
                raise ParameterError(f"hyperbolic Pollaczek needs theta > 0, got {self.theta}")
        elif not 0 < self.theta < math.pi:
            raise ParameterError(f"Pollaczek needs 0 < theta < pi, got {self.theta}")


@dataclass(frozen=True)
class CdhParams:
    """Continuous dual Hahn parameters.

    With ``strict`` the orthogonality conditions (mu, a, b all positive) are
    enforced.  Physics models build recurrences whose ``b`` can be negative;
    they pass ``strict=False`` and only need the leading coefficients
    ``(n+mu+a)(n+mu+b)`` to stay non-zero.
    """

    mu: float
    a: float
    b: float
    strict: bool = True

    def __post_init__(self):
        if self.strict and not (self.mu > 0 and self.a > 0 and self.b > 0):
            raise ParameterError(
                f"continuous dual Hahn parameters must be positive, got "
                f"mu={self.mu}, a={self.a}, b={self.b}"
            )


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return np.atleast_1d(arr).ravel(), arr.shape


def _finish(values, shape):
    if shape == ():
        return float(values[0])
    return values.reshape(shape)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ParameterError(f"degree must be a non-negative integer, got {n}")
    return int(n)


# -- recurrence coefficients in the form y_{k+1} = (p_k + q_k t) y_k - s_k y_{k-1}


def laguerre_coeffs(n, nu):
    k = np.arange(n, dtype=float)
    return (2 * k + nu + 1) / (k + 1), -1.0 / (k + 1), (k + nu) / (k + 1)


def jacobi_multiplication(n, mu, nu):
    """Coefficients of ``(1+x)/2 P_n = D_n P_n + L_n P_{n-1} + U_n P_{n+1}``.

    Returns arrays ``D, L, U`` of length n+1 for degrees 0..n.  The n = 0
    entries are taken as limits so that mu + nu in {0, -1} is handled.
    """
    k = np.arange(n + 1, dtype=float)
    s = mu + nu
    with np.errstate(divide="ignore", invalid="ignore"):
        D = (2 * k * (k + s + 1) + s * (nu + 1)) / ((2 * k + s) * (2 * k + s + 2))
        L = (k + mu) * (k + nu) / ((2 * k + s) * (2 * k + s + 1))
        U = (k + 1) * (k + s + 1) / ((2 * k + s + 1) * (2 * k + s + 2))
    D[0] = (nu + 1) / (s + 2)
    L[0] = 0.0
    U[0] = 1.0 / (s + 2)
    return D, L, U


def jacobi_coeffs(n, mu, nu):
    D, L, U = jacobi_multiplication(n, mu, nu)
    D, L, U = D[:n], L[:n], U[:n]
    return (0.5 - D) / U, 0.5 / U, L / U


def pollaczek_coeffs(n, mu, theta, hyperbolic=False):
    k = np.arange(n, dtype=float)
    c, s = (math.cosh(theta), math.sinh(theta)) if hyperbolic else (math.cos(theta), math.sin(theta))
    return 2 * (k + mu) * c / (k + 1), 2 * s / (k + 1) + 0 * k, (k + 2 * mu - 1) / (k + 1)


def cdh_coeffs(n, mu, a, b):
    """Recurrence in t = x**2 (see the x^2 S_n relation of the family)."""
    k = np.arange(n, dtype=float)
    lead = (k + mu + a) * (k + mu + b)
    if np.any(lead == 0):
        raise ParameterError("continuous dual Hahn recurrence has a vanishing leading coefficient")
    c = k * (k + a + b - 1)
    return (lead + c - mu * mu) / lead, -1.0 / lead, c / lead


def _run(coeffs, t, shape):
    p, q, s = coeffs
    return _finish(_kernels.three_term(np.ascontiguousarray(p), np.ascontiguousarray(q),
                                       np.ascontiguousarray(s), t), shape)


# -- evaluators --------------------------------------------------------------


def laguerre_eval(n, p, x):
    """Laguerre polynomial ``L_n^nu(x)`` from ``L_0 = 1``, ``L_1 = nu + 1 - x``."""
    n = _check_degree(n)
    t, shape = _as_array(x)
    return _run(laguerre_coeffs(n, p.nu), t, shape)


def jacobi_eval(n, p, x):
    """Jacobi polynomial ``P_n^(mu,nu)(x)``; any real x is accepted."""
    n = _check_degree(n)
    t, shape = _as_array(x)
    return _run(jacobi_coeffs(n, p.mu, p.nu), t, shape)


def pollaczek_eval(n, p, x):
    n = _check_degree(n)
    if p.hyperbolic:
        raise ParameterError("pollaczek_eval needs trigonometric parameters (hyperbolic=False)")
    t, shape = _as_array(x)
    return _run(pollaczek_coeffs(n, p.mu, p.theta), t, shape)


def hyper_pollaczek_eval(n, p, x):
    n = _check_degree(n)
    if not p.theta > 0:
        raise ParameterError(f"hyperbolic Pollaczek needs theta > 0, got {p.theta}")
    t, shape = _as_array(x)
    return _run(pollaczek_coeffs(n, p.mu, p.theta, hyperbolic=True), t, shape)


def cdh_eval(n, p, x):
    n = _check_degree(n)
    t, shape = _as_array(x)
    return _run(cdh_coeffs(n, p.mu, p.a, p.b), t * t, shape)


def modified_cdh_eval(n, p, x):
    """``S~_n^mu(x; a, b)``: the continuous dual Hahn recurrence with x^2 -> -x^2."""
    n = _check_degree(n)
    t, shape = _as_array(x)
    return _run(cdh_coeffs(n, p.mu, p.a, p.b), -(t * t), shape)


def laguerre_all(n, nu, x):
    """Rows L_0..L_n at the points x (shape (n+1, len(x)))."""
    t = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)))
    p, q, s = laguerre_coeffs(n, nu)
    return _kernels.three_term_all(p, q, s, t)


def jacobi_all(n, mu, nu, x):
    t = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)))
    p, q, s = jacobi_coeffs(n, mu, nu)
    return _kernels.three_term_all(p, q, s, t)


# -- weights and norms -------------------------------------------------------

FAMILIES = ("laguerre", "jacobi", "pollaczek", "cdh")


def _log_cdh_weight(p, x):
    x = np.asarray(x, dtype=float)
    num = (log_abs_gamma(p.mu + 1j * x) + log_abs_gamma(p.a + 1j * x)
           + log_abs_gamma(p.b + 1j * x))
    den = lgamma(p.mu + p.a) + lgamma(p.mu + p.b) + log_abs_gamma(2j * x)
    return 2 * (num - den) - math.log(2 * math.pi)


def weight_eval(family, params, x):
    """Orthogonality weight of ``family`` at x.

    Endpoints take their limiting values (``0**0 = 1``).  Points outside the
    support raise :class:`DomainError`.
    """
    x = float(x)
    if family == "laguerre":
        if x < 0:
            raise DomainError(f"Laguerre weight support is x >= 0, got {x}")
        return (x ** params.nu if x > 0 else (1.0 if params.nu == 0 else 0.0)) * math.exp(-x)
    if family == "jacobi":
        if abs(x) > 1:
            raise DomainError(f"Jacobi weight support is [-1, 1], got {x}")
        left = (1 - x) ** params.mu if x < 1 else (1.0 if params.mu == 0 else 0.0)
        right = (1 + x) ** params.nu if x > -1 else (1.0 if params.nu == 0 else 0.0)
        return left * right
    if family == "pollaczek":
        mu, th = params.mu, params.theta
        return (
            (2 * math.sin(th)) ** (2 * mu) * math.exp((2 * th - math.pi) * x)
            * float(abs_gamma(mu + 1j * x)) ** 2 / (2 * math.pi)
        )
    if family == "cdh":
        if x < 0:
            raise DomainError(f"continuous dual Hahn weight support is x >= 0, got {x}")
        if x == 0:
            return 0.0
        return float(np.exp(_log_cdh_weight(params, x)))
    raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


def norm_squared(family, params, n):
    """Closed-form value of the diagonal orthogonality integral."""
    if family == "laguerre":
        return math.exp(log_gamma_ratio([n + params.nu + 1], [n + 1]))
    if family == "jacobi":
        mu, nu = params.mu, params.nu
        return 2 ** (mu + nu + 1) / (2 * n + mu + nu + 1) * math.exp(
            log_gamma_ratio([n + mu + 1, n + nu + 1], [n + 1, n + mu + nu + 1]))
    if family == "pollaczek":
        return math.exp(log_gamma_ratio([n + 2 * params.mu], [n + 1]))
    if family == "cdh":
        mu, a, b = params.mu, params.a, params.b
        return math.exp(log_gamma_ratio([n + 1, n + a + b], [n + mu + a, n + mu + b]))
    raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _eval(family, params, n, x):
    if family == "laguerre":
        return laguerre_eval(n, params, x)
    if family == "jacobi":
        return jacobi_eval(n, params, x)
    if family == "pollaczek":
        return pollaczek_eval(n, params, x)
    return cdh_eval(n, params, x)


def _quad(f, a, b, scale, **kw):
    val, err = integrate.quad(f, a, b, limit=400, epsabs=1e-14 * scale, epsrel=1e-12, **kw)
    return val, err


def _pollaczek_line_integral(params, n, m, scale, tol=1e-9):
    mu, th = params.mu, params.theta
    log_pref = 2 * mu * math.log(2 * math.sin(th)) - math.log(2 * math.pi)

    def logw(x):
        return log_pref + (2 * th - math.pi) * x + 2 * log_abs_gamma(mu + 1j * x)

    # the weight decays like exp(-2 theta |x|) on the left, exp(-2 (pi - theta) x) on the right
    xs = np.linspace(-50, 50, 2001)
    lw = logw(xs) + (n + m) * np.log1p(np.abs(xs))
    peak = lw.max()
    cut = peak + math.log(1e-16)
    lo, hi = -1.0, 1.0
    while logw(lo) + (n + m) * math.log1p(abs(lo)) > cut:
        lo *= 1.5
    while logw(hi) + (n + m) * math.log1p(abs(hi)) > cut:
        hi *= 1.5

    def estimate(npts):
        x = np.linspace(lo, hi, npts)
        y = np.exp(logw(x)) * pollaczek_eval(n, params, x) * pollaczek_eval(m, params, x)
        return integrate.trapezoid(y, x)

    npts = 257
    prev = estimate(npts)
    for _ in range(14):
        npts = 2 * npts - 1
        cur = estimate(npts)
        if abs(cur - prev) <= tol * scale:
            return cur
        prev = cur
    raise AccuracyError("Pollaczek line quadrature did not converge", cur, abs(cur - prev))


def orthogonality_check(family, params, n, m):
    """Numerical ``int w P_n P_m`` minus its closed form (zero when n != m).

    Raises :class:`AccuracyError` if the adaptive quadrature reports an error
    bound larger than 1e-9 of the norm scale.
    """
    n, m = _check_degree(n), _check_degree(m)
    rhs = norm_squared(family, params, n) if n == m else 0.0
    scale = math.sqrt(norm_squared(family, params, n) * norm_squared(family, params, m))

    if family == "pollaczek":
        return _pollaczek_line_integral(params, n, m, scale) - rhs

    if family == "laguerre":
        nu = params.nu

        def poly(x):
            return laguerre_eval(n, params, x) * laguerre_eval(m, params, x)

        upper = 60.0 + 4.0 * (n + m) + 2.0 * abs(nu)
        v1, e1 = _quad(lambda x: poly(x) * math.exp(-x), 0.0, 1.0, scale, weight="alg", wvar=(nu, 0.0))
        v2, e2 = _quad(lambda x: poly(x) * x ** nu * math.exp(-x), 1.0, upper, scale)
        v3, e3 = _quad(lambda x: poly(x) * x ** nu * math.exp(-x), upper, np.inf, scale)
        val, err = v1 + v2 + v3, e1 + e2 + e3
    elif family == "jacobi":
        val, err = _quad(lambda x: jacobi_eval(n, params, x) * jacobi_eval(m, params, x),
                         -1.0, 1.0, scale, weight="alg", wvar=(params.nu, params.mu))
    elif family == "cdh":
        def f(x):
            return float(np.exp(_log_cdh_weight(params, x))) * cdh_eval(n, params, x) * cdh_eval(m, params, x)

        pieces = [0.0, 1.0, 4.0, 12.0, 30.0, 80.0]
        val = err = 0.0
        for a, b in zip(pieces[:-1], pieces[1:]):
            v, e = _quad(f, a, b, scale)
            val += v
            err += e
    else:
        raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")

    if err > 1e-9 * scale:
        raise AccuracyError(f"{family} orthogonality quadrature", val - rhs, err)
    return val - rhs
