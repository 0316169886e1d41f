"""Shared types for the solvable models: basis specification, case record,
results, coordinate maps and basis evaluation."""

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from ..errors import DomainError, ParameterError
from ..orthopoly import jacobi_all, laguerre_all
from ..specfun import lgamma


class CaseId(str, enum.Enum):
    CoulombCase1 = "CoulombCase1"
    CoulombCase2 = "CoulombCase2"
    OscillatorCase1 = "OscillatorCase1"
    OscillatorCase2 = "OscillatorCase2"
    PowerLawCase1 = "PowerLawCase1"
    PowerLawCase2 = "PowerLawCase2"
    MorseCase1 = "MorseCase1"
    MorseCase2 = "MorseCase2"
    HulthenCase1 = "HulthenCase1"
    HulthenCase2 = "HulthenCase2"
    HulthenCase3 = "HulthenCase3"
    RosenMorseCase1 = "RosenMorseCase1"


class Coordinate(str, enum.Enum):
    laguerre_r = "laguerre_r"
    laguerre_r2 = "laguerre_r2"
    laguerre_powerlaw = "laguerre_powerlaw"
    laguerre_exp = "laguerre_exp"
    jacobi_hulthen = "jacobi_hulthen"
    jacobi_tanh = "jacobi_tanh"


LAGUERRE_COORDS = (Coordinate.laguerre_r, Coordinate.laguerre_r2,
                   Coordinate.laguerre_powerlaw, Coordinate.laguerre_exp)
LINE_COORDS = (Coordinate.laguerre_exp, Coordinate.jacobi_tanh)


@dataclass(frozen=True)
class BasisSpec:
    """Parameters of an L2 basis ``phi_n = A_n w(x) P_n(x)``.

    Laguerre bases use ``w = x^alpha exp(-beta x)`` with index ``nu``; Jacobi
    bases use ``w = (1+x)^alpha (1-x)^beta`` with ``P_n^(mu,nu)``.
    """

    coordinate: Coordinate
    alpha: float
    beta: float
    nu: float
    lam: float
    mu: float = None
    gamma: float = None
    mu_scale: float = None

    def __post_init__(self):
        object.__setattr__(self, "coordinate", Coordinate(self.coordinate))
        if not self.lam > 0:
            raise ParameterError(f"basis scale lambda must be positive, got {self.lam}")
        if not self.nu > -1:
            raise ParameterError(f"basis index nu must exceed -1, got {self.nu}")
        if self.alpha < 0 or self.beta < 0:
            raise ParameterError(f"basis exponents must be non-negative (alpha={self.alpha}, beta={self.beta})")
        c = self.coordinate
        if c in (Coordinate.jacobi_hulthen, Coordinate.jacobi_tanh):
            if self.mu is None or not self.mu > -1:
                raise ParameterError(f"Jacobi basis index mu must exceed -1, got {self.mu}")
        if c is Coordinate.laguerre_powerlaw and self.gamma in (None, 0.0, 1.0, 2.0):
            raise ParameterError(f"power-law basis needs gamma not in {{0, 1, 2}}, got {self.gamma}")
        if c is Coordinate.laguerre_exp and not (self.mu_scale or 0) > 0:
            raise ParameterError(f"Morse basis needs mu_scale > 0, got {self.mu_scale}")

    @property
    def is_jacobi(self):
        return self.coordinate not in LAGUERRE_COORDS

    @property
    def on_line(self):
        return self.coordinate in LINE_COORDS

    def log_norm(self, n):
        """log A_n for degrees ``n`` (array)."""
        n = np.asarray(n, dtype=float)
        c = self.coordinate
        if not self.is_jacobi:
            factor = {Coordinate.laguerre_r: self.lam, Coordinate.laguerre_r2: 2 * self.lam,
                      Coordinate.laguerre_powerlaw: abs(self.gamma or 1.0) * self.lam,
                      Coordinate.laguerre_exp: self.lam}[c]
            return 0.5 * (math.log(factor) + lgamma(n + 1) - lgamma(n + self.nu + 1))
        mu, nu = self.mu, self.nu
        s = mu + nu
        # (2n+s+1) Gamma(n+s+1) written so that n = 0 stays finite for s+1 <= 0
        lead = np.where(n == 0, lgamma(s + 2 + 0 * n),
                        np.log(np.abs(2 * n + s + 1)) + lgamma(np.maximum(n + s + 1, 1e-300)))
        return 0.5 * (math.log(self.lam) - (s + 1) * math.log(2) + lead + lgamma(n + 1)
                      - lgamma(n + mu + 1) - lgamma(n + nu + 1))


# -- coordinate maps ---------------------------------------------------------


@dataclass(frozen=True)
class Chart:
    """x(r) and its derivatives at a set of points.

    ``omx`` and ``opx`` are ``1 - x`` and ``1 + x`` computed without
    cancellation (Jacobi maps only).
    """

    x: np.ndarray
    dx: np.ndarray
    d2x: np.ndarray
    omx: np.ndarray = None
    opx: np.ndarray = None


def chart(spec, r):
    r = np.asarray(r, dtype=float)
    lam = spec.lam
    c = spec.coordinate
    if c is Coordinate.laguerre_r:
        x = lam * r
        return Chart(x, np.full_like(r, lam), np.zeros_like(r))
    if c is Coordinate.laguerre_r2:
        x = (lam * r) ** 2
        return Chart(x, 2 * lam * lam * r, np.full_like(r, 2 * lam * lam))
    if c is Coordinate.laguerre_powerlaw:
        g = spec.gamma
        x = (lam * r) ** g
        with np.errstate(divide="ignore", invalid="ignore"):
            return Chart(x, g * x / r, g * (g - 1) * x / (r * r))
    if c is Coordinate.laguerre_exp:
        x = spec.mu_scale * np.exp(-lam * r)
        return Chart(x, -lam * x, lam * lam * x)
    if c is Coordinate.jacobi_hulthen:
        e = np.exp(-lam * r)
        omx = 2 * e
        opx = -2 * np.expm1(-lam * r)
        return Chart(1 - omx, lam * omx, -lam * lam * omx, omx, opx)
    # jacobi_tanh
    x = np.tanh(lam * r)
    with np.errstate(over="ignore"):
        sech2 = 1.0 / np.cosh(lam * r) ** 2
    e = np.exp(-2 * lam * np.abs(r))
    small = 2 * e / (1 + e)
    omx = np.where(r > 0, small, 1 - x)
    opx = np.where(r < 0, small, 1 + x)
    return Chart(x, lam * sech2, -2 * lam * lam * x * sech2, omx, opx)


def r_of_x(spec, x):
    """Inverse coordinate map."""
    x = np.asarray(x, dtype=float)
    lam = spec.lam
    c = spec.coordinate
    with np.errstate(divide="ignore"):
        if c is Coordinate.laguerre_r:
            return x / lam
        if c is Coordinate.laguerre_r2:
            return np.sqrt(x) / lam
        if c is Coordinate.laguerre_powerlaw:
            return x ** (1.0 / spec.gamma) / lam
        if c is Coordinate.laguerre_exp:
            return -np.log(x / spec.mu_scale) / lam
        if c is Coordinate.jacobi_hulthen:
            return -np.log((1 - x) / 2) / lam
        return np.arctanh(x) / lam


def check_domain(spec, r):
    r = np.asarray(r, dtype=float)
    if not np.all(np.isfinite(r)):
        raise DomainError("coordinate values must be finite")
    if not spec.on_line and np.any(r < 0):
        raise DomainError("radial coordinate must satisfy r >= 0")
    return r


# -- basis values and derivatives ------------------------------------------------


def _poly_rows(spec, nmax, x):
    """P_0..P_nmax and their first and second x-derivatives, each (nmax+1, len x)."""
    rows = nmax + 1
    P = np.zeros((rows, x.size))
    dP = np.zeros_like(P)
    d2P = np.zeros_like(P)
    if not spec.is_jacobi:
        nu = spec.nu
        P[:] = laguerre_all(nmax, nu, x)
        if nmax >= 1:
            dP[1:] = -laguerre_all(nmax - 1, nu + 1, x)
        if nmax >= 2:
            d2P[2:] = laguerre_all(nmax - 2, nu + 2, x)
        return P, dP, d2P
    # note the (mu, nu) order: weight (1+x)^alpha (1-x)^beta pairs nu with 1+x
    a, b = spec.mu, spec.nu
    n = np.arange(rows, dtype=float)[:, None]
    P[:] = jacobi_all(nmax, a, b, x)
    if nmax >= 1:
        dP[1:] = 0.5 * (n[1:] + a + b + 1) * jacobi_all(nmax - 1, a + 1, b + 1, x)
    if nmax >= 2:
        d2P[2:] = 0.25 * (n[2:] + a + b + 1) * (n[2:] + a + b + 2) * jacobi_all(nmax - 2, a + 2, b + 2, x)
    return P, dP, d2P


def _log_weight(spec, ch):
    """log w(x) and its logarithmic derivatives L1 = w'/w, L2 = w''/w."""
    a, b = spec.alpha, spec.beta
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if not spec.is_jacobi:
            x = ch.x
            logw = np.where(a == 0, 0.0, a * np.log(x)) - b * x
            L1 = a / x - b
            L2 = L1 * L1 - a / (x * x)
        else:
            opx, omx = ch.opx, ch.omx
            logw = (np.where(a == 0, 0.0, a * np.log(opx))
                    + np.where(b == 0, 0.0, b * np.log(omx)))
            L1 = a / opx - b / omx
            L2 = L1 * L1 - a / (opx * opx) - b / (omx * omx)
    return logw, L1, L2


def basis_values(spec, nmax, r, derivatives=False):
    """phi_0..phi_nmax at r, shape (nmax+1, len r).

    With ``derivatives`` also returns the first and second r-derivatives,
    built from the polynomial derivative identities and the chain rule.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    ch = chart(spec, r)
    P, dP, d2P = _poly_rows(spec, nmax, ch.x)
    logw, L1, L2 = _log_weight(spec, ch)
    logA = spec.log_norm(np.arange(nmax + 1))[:, None]
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        amp = np.exp(logA + logw[None, :])
        phi = amp * P
        # zero weight (x^alpha at x = 0, alpha > 0) must not become 0 * inf
        phi = np.where(np.isfinite(phi), phi, 0.0)
        if not derivatives:
            return phi
        inner1 = dP + P * L1
        d1 = amp * inner1 * ch.dx
        inner2 = d2P + 2 * dP * L1 + P * L2
        d2 = amp * (inner2 * ch.dx ** 2 + inner1 * ch.d2x)
        # far tails: the weight underflows while L1, L2 or x' overflow
        # (the true values there are below the smallest double anyway)
        dead = ~(amp > 0)
        d1 = np.where(dead | ~np.isfinite(d1), 0.0, d1)
        d2 = np.where(dead | ~np.isfinite(d2), 0.0, d2)
    return phi, d1, d2


# -- results -----------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumResult:
    """Closed-form bound levels with the per-level quantized basis parameters.

    For power-law models the energy is zero and the quantized quantity is a
    potential strength, reported in ``quantized_basis``.
    """

    energies: np.ndarray
    quantized_basis: tuple = ()

    def __len__(self):
        return len(self.energies)


@dataclass(frozen=True)
class ExpansionResult:
    """Expansion coefficients of ``psi = sum f_n phi_n``.

    ``coeffs`` is normalised to ``f_0 = 1``; ``f0_raw`` is the n = 0 value of
    the closed-form expression (1 when the recursion is used), so
    ``f0_raw * coeffs`` reproduces the raw closed-form sequence.
    ``polynomials`` holds the rescaled P_n(E) and ``method`` says which
    route produced the numbers ("closed" or "recursion").
    """

    coeffs: np.ndarray
    polynomials: np.ndarray
    f0_raw: float = 1.0
    method: str = "closed"


@dataclass(frozen=True)
class ModelCase:
    """A (potential, basis case) pair with its physical parameters."""

    id: CaseId
    params: dict = field(default_factory=dict)
    sign_choice: str = "plus"

    def __post_init__(self):
        from . import registry

        try:
            cid = CaseId(self.id)
        except ValueError:
            raise ParameterError(f"unknown model id {self.id!r}") from None
        object.__setattr__(self, "id", cid)
        if self.sign_choice not in ("plus", "minus"):
            raise ParameterError(f"sign_choice must be 'plus' or 'minus', got {self.sign_choice!r}")
        handler = registry.handler(cid)
        clean = handler.validate(dict(self.params), self.sign_choice)
        object.__setattr__(self, "params", MappingProxyType(clean))

    @property
    def handler(self):
        from . import registry

        return registry.handler(self.id)

    def __getattr__(self, name):
        # convenient read access to parameters: case.lam, case.Z, ...
        params = self.__dict__.get("params")
        if params is not None and name in params:
            return params[name]
        raise AttributeError(name)

    def replace(self, **changes):
        p = dict(self.params)
        p.update(changes)
        return ModelCase(self.id, p, self.sign_choice)

    def __hash__(self):
        return hash((self.id, tuple(sorted(self.params.items())), self.sign_choice))
