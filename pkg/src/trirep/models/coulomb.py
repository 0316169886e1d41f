"""Coulomb problem in the x = lambda r Laguerre basis (two basis cases)."""

import math

import numpy as np

from ..tridiag import TridiagonalRep
from ._common import (BoundState, Handler, cdh_all, cdh_branch, finite_series, gamma_sqrt_ratio,
                      lag_off, laguerre_cdh_rep, pollaczek_all, require, unit)
from .base import BasisSpec, CaseId, Coordinate, SpectrumResult


class CoulombCase1(Handler):
    """alpha = ell + 1, nu = 2 ell + 1, free scale lambda; V = Z/r."""

    id = CaseId.CoulombCase1
    required = ("Z", "ell", "lam")
    has_closed_form = True

    def basis(self, case, E=None, lam=None):
        ell = case.params["ell"]
        return BasisSpec(Coordinate.laguerre_r, ell + 1, 0.5, 2 * ell + 1, lam or case.params["lam"])

    def potential(self, case, r):
        return case.params["Z"] / r

    def rep(self, case, E, N):
        Z, ell, lam = case.params["Z"], case.params["ell"], case.params["lam"]
        n = np.arange(N, dtype=float)
        sm = 2 * E / lam**2 - 0.25
        sp = 2 * E / lam**2 + 0.25
        diag = -2 * (n + ell + 1) * sm + 2 * Z / lam
        return TridiagonalRep(diag, sp * lag_off(2 * ell + 1, N), 0.0, lam**2 / 2)

    def closed_form(self, case, E, N):
        if not E > 0:
            return None
        Z, ell, lam = case.params["Z"], case.params["ell"], case.params["lam"]
        theta = math.acos((E - lam**2 / 8) / (E + lam**2 / 8))
        P = pollaczek_all(N, ell + 1, theta, -Z / math.sqrt(2 * E))
        return gamma_sqrt_ratio(np.arange(N), 2 * ell + 1) * P, P

    def polynomials(self, case, E, f):
        nu = 2 * case.params["ell"] + 1
        n = np.arange(len(f))
        return f * gamma_sqrt_ratio(n, nu, invert=True) / gamma_sqrt_ratio(0, nu, invert=True)

    def spectrum(self, case, n_max):
        Z, ell = case.params["Z"], case.params["ell"]
        require(Z < 0, f"CoulombCase1 bound states need an attractive charge Z < 0, got Z = {Z}")
        k = np.arange(n_max + 1) + ell + 1
        return SpectrumResult(-0.5 * (Z / k) ** 2, tuple({"lam": 2 * abs(Z) / kk} for kk in k))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        lam_n = spec.quantized_basis[level]["lam"]
        return BoundState(spec.energies[level], self.basis(case, lam=lam_n), unit(level),
                          case.replace(lam=lam_n))


class CoulombCase2(Handler):
    """alpha = 1 + nu/2 with free nu; lambda = sqrt(-8E); V = Z/r + B/(2 r^2)."""

    id = CaseId.CoulombCase2
    required = ("Z", "B", "ell", "nu")
    has_closed_form = True

    def check_energy(self, case, E):
        require(E < 0, f"CoulombCase2 needs E < 0 (lambda^2 = -8E), got E = {E}")

    def basis(self, case, E):
        self.check_energy(case, E)
        nu = case.params["nu"]
        return BasisSpec(Coordinate.laguerre_r, 1 + nu / 2, 0.5, nu, math.sqrt(-8 * E))

    def potential(self, case, r):
        return case.params["Z"] / r + case.params["B"] / (2 * r * r)

    def rep(self, case, E, N):
        self.check_energy(case, E)
        p = case.params
        tau = p["Z"] / math.sqrt(-2 * E)
        return laguerre_cdh_rep(-4 * E, p["nu"], tau, (p["ell"] + 0.5) ** 2 + p["B"], N)

    def closed_form(self, case, E, N):
        p = case.params
        nu = p["nu"]
        x, modified = cdh_branch((p["ell"] + 0.5) ** 2 + p["B"], "(ell+1/2)^2 + B")
        tau = p["Z"] / math.sqrt(-2 * E)
        P = cdh_all(N, (nu + 1) / 2, (nu + 1) / 2, tau + 0.5, x, modified)
        return gamma_sqrt_ratio(np.arange(N), nu, invert=True) * P, P

    def polynomials(self, case, E, f):
        nu = case.params["nu"]
        n = np.arange(len(f))
        return f * gamma_sqrt_ratio(n, nu) / gamma_sqrt_ratio(0, nu)

    def spectrum(self, case, n_max):
        p = case.params
        kappa = (p["ell"] + 0.5) ** 2 + p["B"]
        require(p["Z"] < 0, f"CoulombCase2 bound states need Z < 0, got Z = {p['Z']}")
        require(kappa > 0, f"CoulombCase2 bound states need (ell+1/2)^2 + B > 0, got {kappa}")
        nu = -1 + 2 * math.sqrt(kappa)
        E = -0.5 * (p["Z"] / (np.arange(n_max + 1) + nu / 2 + 1)) ** 2
        return SpectrumResult(E, tuple({"nu": nu, "lam": math.sqrt(-8 * e)} for e in E))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        E = spec.energies[level]
        c = case.replace(nu=spec.quantized_basis[level]["nu"])
        return BoundState(E, self.basis(c, E), finite_series(self, c, E, level), c)

