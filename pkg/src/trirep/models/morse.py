"""Morse oscillator on the line in the x = mu exp(-lambda y) Laguerre basis."""

import math

import numpy as np

from ..errors import BoundaryError
from ..tridiag import TridiagonalRep
from ._common import (BoundState, Handler, cdh_all, close, empty_spectrum, finite_series,
                      gamma_sqrt_ratio, lag_off, laguerre_cdh_rep, pollaczek_all, require, unit)
from .base import BasisSpec, CaseId, Coordinate, SpectrumResult


class _Morse(Handler):
    radial = False
    has_closed_form = True

    def check(self, p, sign):
        require(p["mu_scale"] > 0, f"{self.id.value}: mu_scale must be positive, got {p['mu_scale']}")

    def levels(self, case, n_max):
        """Levels of the Morse well with B = (mu/2)^2: kappa_n = -(A/mu + n + 1/2) > 0."""
        p = case.params
        kappa = -(p["A"] / p["mu_scale"] + np.arange(n_max + 1) + 0.5)
        kappa = kappa[kappa > 0]
        return kappa, -(p["lam"] ** 2 / 2) * kappa**2


class MorseCase1(_Morse):
    """nu = 2 alpha = (2/lambda) sqrt(-2E); V = (lambda^2/2)(A e^{-lambda y} + B e^{-2 lambda y})."""

    id = CaseId.MorseCase1
    required = ("lam", "mu_scale", "A", "B")

    def check_energy(self, case, E):
        require(E < 0, f"MorseCase1 needs E < 0 (nu = (2/lambda) sqrt(-2E)), got E = {E}")

    def basis(self, case, E, nu=None):
        p = case.params
        if nu is None:
            self.check_energy(case, E)
            nu = 2 * math.sqrt(-2 * E) / p["lam"]
        return BasisSpec(Coordinate.laguerre_exp, nu / 2, 0.5, nu, p["lam"], mu_scale=p["mu_scale"])

    def potential(self, case, y):
        p = case.params
        e = np.exp(-p["lam"] * y)
        return 0.5 * p["lam"] ** 2 * (p["A"] * e + p["B"] * e * e)

    def rep(self, case, E, N):
        self.check_energy(case, E)
        p = case.params
        nu = 2 * math.sqrt(-2 * E) / p["lam"]
        mu = p["mu_scale"]
        b = p["B"] / mu**2
        n = np.arange(N, dtype=float)
        diag = (2 * n + nu + 1) * (b + 0.25) + p["A"] / mu
        return TridiagonalRep(diag, -(b - 0.25) * lag_off(nu, N), 0.0, p["lam"] ** 2 / 2)

    def closed_form(self, case, E, N, printed_angle=False):
        """Pollaczek series; ``printed_angle=True`` uses acos(rho^2/(rho^2+1))."""
        p = case.params
        A, B, mu = p["A"], p["B"], p["mu_scale"]
        nu = 2 * math.sqrt(-2 * E) / p["lam"]
        if B == 0:
            raise BoundaryError("B = 0 is the boundary between the two closed-form branches")
        rho = 2 * math.sqrt(abs(B)) / mu
        m = (nu + 1) / 2
        n = np.arange(N)
        if B < 0:
            c = rho**2 / (rho**2 + 1) if printed_angle else (rho**2 - 1) / (rho**2 + 1)
            P = pollaczek_all(N, m, math.acos(c), -A / (2 * math.sqrt(-B)))
        else:
            if rho == 1:
                raise BoundaryError("mu = 2 sqrt(B) separates the two hyperbolic branches")
            x = A / (2 * math.sqrt(B))
            if rho > 1:
                P = pollaczek_all(N, m, math.asinh(2 * rho / (rho**2 - 1)), x, hyperbolic=True)
            else:
                P = (-1.0) ** n * pollaczek_all(N, m, math.asinh(2 * rho / (1 - rho**2)), x, hyperbolic=True)
        return gamma_sqrt_ratio(n, nu) * P, P

    def polynomials(self, case, E, f):
        nu = 2 * math.sqrt(-2 * E) / case.params["lam"]
        n = np.arange(len(f))
        return f * gamma_sqrt_ratio(n, nu, invert=True) / gamma_sqrt_ratio(0, nu, invert=True)

    def spectrum(self, case, n_max):
        p = case.params
        target = (p["mu_scale"] / 2) ** 2
        require(close(p["B"], target),
                f"MorseCase1 diagonalization needs B = (mu_scale/2)^2 = {target}, got B = {p['B']}")
        kappa, E = self.levels(case, n_max)
        if not len(E):
            return empty_spectrum()
        return SpectrumResult(E, tuple({"nu": 2 * k} for k in kappa))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        nu = spec.quantized_basis[level]["nu"]
        return BoundState(spec.energies[level], self.basis(case, None, nu=nu), unit(level), case)


class MorseCase2(_Morse):
    """alpha = (nu+1)/2 with free nu; V = (lambda^2/2)[A e^{-lambda y} + (mu/2)^2 e^{-2 lambda y}]."""

    id = CaseId.MorseCase2
    required = ("lam", "mu_scale", "A", "nu")

    def basis(self, case, E=None):
        p = case.params
        return BasisSpec(Coordinate.laguerre_exp, (p["nu"] + 1) / 2, 0.5, p["nu"], p["lam"],
                         mu_scale=p["mu_scale"])

    def potential(self, case, y):
        p = case.params
        e = np.exp(-p["lam"] * y)
        return 0.5 * p["lam"] ** 2 * (p["A"] * e + (p["mu_scale"] / 2) ** 2 * e * e)

    def rep(self, case, E, N):
        p = case.params
        return laguerre_cdh_rep(p["lam"] ** 2 / 2, p["nu"], p["A"] / p["mu_scale"],
                                -2 * E / p["lam"] ** 2, N)

    def closed_form(self, case, E, N, printed_argument=False):
        """Dual Hahn series in z^2 = 2E/lambda^2 (modified family when E < 0).

        ``printed_argument=True`` uses z^2 = ((nu+1)/2)^2 + 2E/lambda^2 instead.
        """
        p = case.params
        nu, lam = p["nu"], p["lam"]
        z2 = 2 * E / lam**2
        if printed_argument:
            z2 += ((nu + 1) / 2) ** 2
        if z2 == 0:
            raise BoundaryError("zero dual Hahn argument is the boundary between the two branches")
        P = cdh_all(N, (nu + 1) / 2, (nu + 1) / 2, p["A"] / p["mu_scale"] + 0.5,
                    math.sqrt(abs(z2)), modified=z2 < 0)
        return gamma_sqrt_ratio(np.arange(N), nu, invert=True) * P, P

    def polynomials(self, case, E, f):
        nu = case.params["nu"]
        n = np.arange(len(f))
        return f * gamma_sqrt_ratio(n, nu) / gamma_sqrt_ratio(0, nu)

    def spectrum(self, case, n_max):
        kappa, E = self.levels(case, n_max)
        if not len(E):
            return empty_spectrum()
        return SpectrumResult(E, tuple({"nu": 2 * k - 1} for k in kappa))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        E = spec.energies[level]
        c = case.replace(nu=spec.quantized_basis[level]["nu"])
        return BoundState(E, self.basis(c), finite_series(self, c, E, level), c)
