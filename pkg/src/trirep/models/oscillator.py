"""Isotropic oscillator in the x = (lambda r)^2 Laguerre basis."""

import math

import numpy as np

from ..errors import BoundaryError
from ..tridiag import TridiagonalRep
from ._common import (BoundState, Handler, cdh_all, cdh_branch, finite_series, gamma_sqrt_ratio,
                      lag_off, laguerre_cdh_rep, pollaczek_all, require, unit)
from .base import BasisSpec, CaseId, Coordinate, SpectrumResult


class OscillatorCase1(Handler):
    """2 alpha = ell + 1, nu = ell + 1/2, free lambda; V = omega^4 r^2 / 2."""

    id = CaseId.OscillatorCase1
    required = ("omega", "ell", "lam")
    has_closed_form = True

    def check(self, p, sign):
        require(p["omega"] > 0, f"OscillatorCase1 needs omega > 0, got {p['omega']}")

    def basis(self, case, E=None, lam=None):
        ell = case.params["ell"]
        return BasisSpec(Coordinate.laguerre_r2, (ell + 1) / 2, 0.5, ell + 0.5, lam or case.params["lam"])

    def potential(self, case, r):
        return 0.5 * case.params["omega"] ** 4 * r * r

    def rep(self, case, E, N):
        p = case.params
        lam, nu = p["lam"], p["ell"] + 0.5
        rho4 = (p["omega"] / lam) ** 4
        n = np.arange(N, dtype=float)
        diag = (2 * n + nu + 1) * (rho4 + 1) - 2 * E / lam**2
        return TridiagonalRep(diag, -(rho4 - 1) * lag_off(nu, N), 0.0, lam**2 / 2)

    def closed_form(self, case, E, N, printed_index=False):
        """Hyperbolic Pollaczek series.

        ``printed_index=True`` uses the index ell + 3/2 instead of (nu+1)/2;
        it exists only so the tests can show that choice fails the recursion.
        """
        p = case.params
        lam, omega, nu = p["lam"], p["omega"], p["ell"] + 0.5
        if lam == omega:
            raise BoundaryError("lambda = omega is the boundary between the two closed-form branches")
        rho2 = (omega / lam) ** 2
        mu = p["ell"] + 1.5 if printed_index else (nu + 1) / 2
        x = -E / (2 * omega**2)
        n = np.arange(N)
        if lam < omega:
            P = pollaczek_all(N, mu, math.asinh(2 * rho2 / (rho2**2 - 1)), x, hyperbolic=True)
        else:
            P = (-1.0) ** n * pollaczek_all(N, mu, math.asinh(2 * rho2 / (1 - rho2**2)), x, hyperbolic=True)
        return gamma_sqrt_ratio(n, nu) * P, P

    def polynomials(self, case, E, f):
        nu = case.params["ell"] + 0.5
        n = np.arange(len(f))
        return f * gamma_sqrt_ratio(n, nu, invert=True) / gamma_sqrt_ratio(0, nu, invert=True)

    def spectrum(self, case, n_max):
        p = case.params
        n = np.arange(n_max + 1)
        E = p["omega"] ** 2 * (2 * n + p["ell"] + 1.5)
        return SpectrumResult(E, tuple({"lam": p["omega"]} for _ in n))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        c = case.replace(lam=case.params["omega"])
        return BoundState(spec.energies[level], self.basis(c), unit(level), c)


class OscillatorCase2(Handler):
    """lambda is the oscillator frequency, nu free; V = lambda^4 r^2/2 + B/(2 r^2)."""

    id = CaseId.OscillatorCase2
    required = ("lam", "B", "ell", "nu")
    has_closed_form = True

    def basis(self, case, E=None):
        nu = case.params["nu"]
        return BasisSpec(Coordinate.laguerre_r2, (nu + 1.5) / 2, 0.5, nu, case.params["lam"])

    def potential(self, case, r):
        p = case.params
        return 0.5 * p["lam"] ** 4 * r * r + p["B"] / (2 * r * r)

    def rep(self, case, E, N):
        p = case.params
        lam = p["lam"]
        tau = -E / (2 * lam**2)
        extra = ((p["ell"] + 0.5) / 2) ** 2 + p["B"] / 4
        return laguerre_cdh_rep(2 * lam**2, p["nu"], tau, extra, N)

    def closed_form(self, case, E, N, printed_index=False):
        """Dual Hahn series; ``printed_index=True`` swaps in the index nu + 1."""
        p = case.params
        nu = p["nu"]
        x, modified = cdh_branch((p["ell"] + 0.5) ** 2 + p["B"], "(ell+1/2)^2 + B")
        tau = -E / (2 * p["lam"] ** 2)
        mu = nu + 1 if printed_index else (nu + 1) / 2
        P = cdh_all(N, mu, (nu + 1) / 2, tau + 0.5, x / 2, modified)
        return gamma_sqrt_ratio(np.arange(N), nu, invert=True) * P, P

    def polynomials(self, case, E, f):
        nu = case.params["nu"]
        n = np.arange(len(f))
        return f * gamma_sqrt_ratio(n, nu) / gamma_sqrt_ratio(0, nu)

    def spectrum(self, case, n_max):
        p = case.params
        kappa = (p["ell"] + 0.5) ** 2 + p["B"]
        require(kappa > 0, f"OscillatorCase2 bound states need (ell+1/2)^2 + B > 0, got {kappa}")
        nu = -1 + math.sqrt(kappa)
        E = p["lam"] ** 2 * (2 * np.arange(n_max + 1) + nu + 2)
        return SpectrumResult(E, tuple({"nu": nu} for _ in E))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        E = spec.energies[level]
        c = case.replace(nu=spec.quantized_basis[level]["nu"])
        return BoundState(E, self.basis(c), finite_series(self, c, E, level), c)
