"""Zero-energy power-law potentials in the x = (lambda r)^gamma Laguerre basis."""

import math

import numpy as np

from ..errors import BoundaryError, ParameterError
from ..tridiag import TridiagonalRep
from ._common import (BoundState, Handler, cdh_all, cdh_branch, close, finite_series,
                      gamma_sqrt_ratio, lag_off, laguerre_cdh_rep, pollaczek_all, require, unit)
from .base import BasisSpec, CaseId, Coordinate, SpectrumResult


class _PowerLaw(Handler):
    has_closed_form = True

    def check(self, p, sign):
        g = p["gamma"]
        require(g not in (0.0, 1.0, 2.0), f"{self.id.value}: gamma must not be 0, 1 or 2, got {g}")

    def check_energy(self, case, E):
        if E is not None and E != 0:
            raise ParameterError(f"{self.id.value} is solvable only at zero energy, got E = {E}")

    def polynomials(self, case, E, f):
        nu = self.basis(case).nu
        n = np.arange(len(f))
        inv = self.gamma_sign_invert
        return f * gamma_sqrt_ratio(n, nu, invert=not inv) / gamma_sqrt_ratio(0, nu, invert=not inv)


class PowerLawCase1(_PowerLaw):
    """nu = (2 ell + 1)/|gamma|; V = (A r^gamma + B r^(2 gamma) / 2) / r^2."""

    id = CaseId.PowerLawCase1
    required = ("gamma", "lam", "ell", "A", "B")
    gamma_sign_invert = False

    def basis(self, case, E=None):
        p = case.params
        g, ell = p["gamma"], p["ell"]
        alpha = (ell + 1) / g if g > 0 else -ell / g
        return BasisSpec(Coordinate.laguerre_powerlaw, alpha, 0.5, (2 * ell + 1) / abs(g), p["lam"], gamma=g)

    def potential(self, case, r):
        p = case.params
        g = p["gamma"]
        return (p["A"] * r**g + 0.5 * p["B"] * r ** (2 * g)) / (r * r)

    def rep(self, case, E, N):
        self.check_energy(case, E)
        p = case.params
        g, lam = p["gamma"], p["lam"]
        nu = self.basis(case).nu
        b = p["B"] / lam ** (2 * g)
        n = np.arange(N, dtype=float)
        diag = (2 * n + nu + 1) * (b + g * g / 4) + 2 * p["A"] / lam**g
        # written so the coupling is exactly zero at the quantized B
        off = -(p["B"] - (g * lam**g / 2) ** 2) / lam ** (2 * g)
        return TridiagonalRep(diag, off * lag_off(nu, N), 0.0, lam**2 / 2)

    def closed_form(self, case, E, N):
        p = case.params
        g, lam, A, B = p["gamma"], p["lam"], p["A"], p["B"]
        nu = self.basis(case).nu
        if B == 0:
            raise BoundaryError("B = 0 is the boundary between the two closed-form branches")
        rho = 2 * math.sqrt(abs(B)) / (abs(g) * lam**g)
        mu = (nu + 1) / 2
        n = np.arange(N)
        if B < 0:
            theta = math.acos((rho**2 - 1) / (rho**2 + 1))
            P = pollaczek_all(N, mu, theta, -A / (abs(g) * math.sqrt(-B)))
        else:
            if rho == 1:
                raise BoundaryError("rho = 1 separates the two hyperbolic branches")
            x = A / (abs(g) * math.sqrt(B))
            if rho > 1:
                P = pollaczek_all(N, mu, math.asinh(2 * rho / (rho**2 - 1)), x, hyperbolic=True)
            else:
                P = (-1.0) ** n * pollaczek_all(N, mu, math.asinh(2 * rho / (1 - rho**2)), x, hyperbolic=True)
        return gamma_sqrt_ratio(n, nu) * P, P

    def spectrum(self, case, n_max):
        """Zero-energy levels: the coupling A is quantized once B = (gamma lambda^gamma / 2)^2."""
        p = case.params
        g, lam = p["gamma"], p["lam"]
        target = (g * lam**g / 2) ** 2
        require(close(p["B"], target),
                f"PowerLawCase1 diagonalization needs B = (gamma lambda^gamma / 2)^2 = {target}, got B = {p['B']}")
        nu = self.basis(case).nu
        A = -lam**g * (g * g / 4) * (2 * np.arange(n_max + 1) + nu + 1)
        return SpectrumResult(np.zeros(n_max + 1), tuple({"A": a} for a in A))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        c = case.replace(A=spec.quantized_basis[level]["A"])
        return BoundState(0.0, self.basis(c), unit(level), c)


class PowerLawCase2(_PowerLaw):
    """nu = 2 alpha - 1 - 1/gamma with free nu;
    V = [A + B r^gamma / 2 + (gamma/2)^2 (lambda r)^(2 gamma) / 2] / r^2."""

    id = CaseId.PowerLawCase2
    required = ("gamma", "lam", "ell", "A", "B", "nu")
    gamma_sign_invert = True

    def check(self, p, sign):
        super().check(p, sign)
        alpha = (p["nu"] + 1 + 1 / p["gamma"]) / 2
        require(alpha > 0, f"PowerLawCase2 needs alpha = (nu + 1 + 1/gamma)/2 > 0, got {alpha}")

    def basis(self, case, E=None):
        p = case.params
        g, nu = p["gamma"], p["nu"]
        return BasisSpec(Coordinate.laguerre_powerlaw, (nu + 1 + 1 / g) / 2, 0.5, nu, p["lam"], gamma=g)

    def potential(self, case, r):
        p = case.params
        g, lam = p["gamma"], p["lam"]
        return (p["A"] + 0.5 * p["B"] * r**g + 0.5 * (g / 2) ** 2 * (lam * r) ** (2 * g)) / (r * r)

    def rep(self, case, E, N):
        self.check_energy(case, E)
        p = case.params
        g, lam = p["gamma"], p["lam"]
        tau = p["B"] / (g * g * lam**g)
        extra = ((p["ell"] + 0.5) / g) ** 2 + 2 * p["A"] / g**2
        return laguerre_cdh_rep((g * lam) ** 2 / 2, p["nu"], tau, extra, N)

    def closed_form(self, case, E, N, printed_index=False):
        p = case.params
        g, lam, nu = p["gamma"], p["lam"], p["nu"]
        x, modified = cdh_branch((p["ell"] + 0.5) ** 2 + 2 * p["A"], "(ell+1/2)^2 + 2A")
        tau = p["B"] / (g * g * lam**g)
        mu = nu + 1 if printed_index else (nu + 1) / 2
        P = cdh_all(N, mu, (nu + 1) / 2, tau + 0.5, x / abs(g), modified)
        return gamma_sqrt_ratio(np.arange(N), nu, invert=True) * P, P

    def spectrum(self, case, n_max):
        """Zero-energy levels: B is quantized once 2A = (gamma (nu+1)/2)^2 - (ell+1/2)^2."""
        p = case.params
        g, lam, nu = p["gamma"], p["lam"], p["nu"]
        target = (g * (nu + 1) / 2) ** 2 - (p["ell"] + 0.5) ** 2
        require(close(2 * p["A"], target),
                f"PowerLawCase2 diagonalization needs 2A = (gamma (nu+1)/2)^2 - (ell+1/2)^2 = {target}, "
                f"got 2A = {2 * p['A']}")
        B = -g * g * lam**g * (np.arange(n_max + 1) + nu / 2 + 1)
        return SpectrumResult(np.zeros(n_max + 1), tuple({"B": b} for b in B))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        c = case.replace(B=spec.quantized_basis[level]["B"])
        return BoundState(0.0, self.basis(c), finite_series(self, c, 0.0, level), c)
