"""S-wave Hulthen-type potentials in the x = 1 - 2 exp(-lambda r) Jacobi basis."""

import math

import numpy as np

from ..errors import ParameterError
from ..specfun import lgamma
from ..tridiag import TridiagonalRep
from ._common import (BoundState, Handler, empty_spectrum, finite_series, jacobi_sym, require,
                      unit)
from .base import BasisSpec, CaseId, Coordinate, SpectrumResult


def jacobi_rescaling(n, mu, nu):
    """Factors c_n with P_n = c_n f_n for the Hulthen polynomial families.

    c_n = sqrt(Gamma(n+mu+1) Gamma(n+nu+1) / (Gamma(n+1) Gamma(n+mu+nu+1) (2n+mu+nu+1))).
    """
    n = np.asarray(n, dtype=float)
    s = mu + nu
    lead = np.where(n == 0, lgamma(s + 2 + 0 * n),
                    np.log(np.abs(2 * n + s + 1)) + lgamma(np.maximum(n + s + 1, 1e-300)))
    return np.exp(0.5 * (lgamma(n + mu + 1) + lgamma(n + nu + 1) - lgamma(n + 1) - lead))


def hulthen1_recursion(mu, nu, gamma, N):
    """Diagonal, lower and upper coefficients of the deformed Jacobi recursion

        z P_n = [gamma (n + (mu+nu+1)/2)^2 + D_n] P_n + L_n P_{n-1} + U_n P_{n+1}

    where D, L, U are the (1+x)/2 multiplication coefficients of P^(mu,nu).
    """
    from ..orthopoly import jacobi_multiplication

    D, L, U = jacobi_multiplication(N - 1, mu, nu)
    n = np.arange(N, dtype=float)
    return gamma * (n + (mu + nu + 1) / 2) ** 2 + D, L, U


def _mu_of_energy(lam, E):
    return 2 * math.sqrt(-2 * E) / lam


def _inv_u(lam, r):
    """1/(e^{lambda r} - 1) without cancellation near r = 0."""
    return 1.0 / np.expm1(lam * r)


def _bracketed(n, mu, nu, g):
    """(n + (mu+nu)/2 + 1)^2 + g for n = 0..N-1 (array n)."""
    return (n + (mu + nu) / 2 + 1) ** 2 + g


class _Hulthen(Handler):
    def polynomials(self, case, E, f):
        b = self.basis(case, E)
        c = jacobi_rescaling(np.arange(len(f)), b.mu, b.nu)
        return f * c / c[0]


class HulthenCase1(_Hulthen):
    """beta = mu/2, alpha = (nu+1)/2, mu fixed by E;
    V = C/(e^{lr}-1)^2 + A/(e^{lr}-1) + B e^{-lr} [x 1/(e^{lr}-1) on the minus branch]."""

    id = CaseId.HulthenCase1
    required = ("lam", "A", "B", "nu")

    def check_energy(self, case, E):
        require(E < 0, f"HulthenCase1 needs E < 0 (mu = (2/lambda) sqrt(-2E)), got E = {E}")

    def C(self, case):
        p = case.params
        return p["lam"] ** 2 / 2 * (p["nu"] ** 2 - 1) / 4

    def effective(self, case):
        p = dict(case.params)
        if case.sign_choice == "minus":
            p["A"], p["B"] = p["A"] + p["B"], -p["B"]
        return p

    def basis(self, case, E, mu=None):
        p = case.params
        if mu is None:
            self.check_energy(case, E)
            mu = _mu_of_energy(p["lam"], E)
        return BasisSpec(Coordinate.jacobi_hulthen, (p["nu"] + 1) / 2, mu / 2, p["nu"], p["lam"], mu=mu)

    def potential(self, case, r):
        p = case.params
        lam = p["lam"]
        iu = _inv_u(lam, r)
        last = p["B"] * np.exp(-lam * r)
        if case.sign_choice == "minus":
            last = last * iu
        return self.C(case) * iu * iu + p["A"] * iu + last

    def rep(self, case, E, N):
        self.check_energy(case, E)
        p = self.effective(case)
        lam, nu, A, B = p["lam"], p["nu"], p["A"], p["B"]
        mu = _mu_of_energy(lam, E)
        D, off = jacobi_sym(mu, nu, N)
        n = np.arange(N, dtype=float)
        if B == 0:
            diag = n * (n + mu + nu + 1) + 0.5 * (mu + 1) * (nu + 1) + 2 * A / lam**2
            return TridiagonalRep(diag, np.zeros(N - 1), 0.0, lam**2 / 2)
        g = lam**2 / (2 * B)
        diag = g * (n + (mu + nu + 1) / 2) ** 2 + D
        return TridiagonalRep(diag, off, (self.C(case) - A - E) / B, B)

    def spectrum(self, case, n_max):
        p = self.effective(case)
        require(p["B"] == 0, f"HulthenCase1 has a closed-form spectrum only for B = 0, got B = {p['B']}")
        lam = p["lam"]
        k = np.arange(n_max + 1) + (p["nu"] + 1) / 2
        mu = -k - 2 * (p["A"] - self.C(case)) / (lam**2 * k)
        mu = mu[mu > 0]
        if not len(mu):
            return empty_spectrum()
        return SpectrumResult(-(lam**2 / 8) * mu**2, tuple({"mu": m} for m in mu))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        mu = spec.quantized_basis[level]["mu"]
        return BoundState(spec.energies[level], self.basis(case, None, mu=mu), unit(level), case)


class HulthenCase2(_Hulthen):
    """beta = mu/2, alpha = 1 + nu/2, mu fixed by E; V = A/(e^{lr}-1) + B e^{lr}/(e^{lr}-1)^2."""

    id = CaseId.HulthenCase2
    required = ("lam", "A", "B", "nu")

    def check_energy(self, case, E):
        require(E < 0, f"HulthenCase2 needs E < 0 (mu = (2/lambda) sqrt(-2E)), got E = {E}")

    def basis(self, case, E):
        self.check_energy(case, E)
        p = case.params
        mu = _mu_of_energy(p["lam"], E)
        return BasisSpec(Coordinate.jacobi_hulthen, 1 + p["nu"] / 2, mu / 2, p["nu"], p["lam"], mu=mu)

    def potential(self, case, r):
        p = case.params
        iu = _inv_u(p["lam"], r)
        return (p["A"] + p["B"]) * iu + p["B"] * iu * iu

    def rep(self, case, E, N):
        self.check_energy(case, E)
        p = case.params
        lam, nu = p["lam"], p["nu"]
        mu = _mu_of_energy(lam, E)
        return hulthen2_rep(mu, nu, 2 * (E + p["A"]) / lam**2, N,
                            z=((nu + 1) / 2) ** 2 - 2 * p["B"] / lam**2 - 0.25, scale=lam**2)

    def spectrum(self, case, n_max, printed=False):
        """Levels with nu tied to B by (nu+1)/2 = |D|/lambda, D^2 = 2B + lambda^2/4.

        The level formula uses K = n + nu/2 + 1; ``printed=True`` uses
        n + (nu+1)/2 + 1 instead (kept for comparison only).
        """
        p = case.params
        lam, A = p["lam"], p["A"]
        D2 = 2 * p["B"] + lam**2 / 4
        require(D2 > 0, f"HulthenCase2 bound states need B > -lambda^2/8, got B = {p['B']}")
        nu = 2 * math.sqrt(D2) / lam - 1
        K = np.arange(n_max + 1) + (nu + 1) / 2 + (1.0 if printed else 0.5)
        mu = -K - 2 * A / (lam**2 * K)
        mu = mu[mu > 0]
        if not len(mu):
            return empty_spectrum()
        return SpectrumResult(-(lam**2 / 8) * mu**2, tuple({"mu": m, "nu": nu} for m in mu))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        E = spec.energies[level]
        c = case.replace(nu=spec.quantized_basis[level]["nu"])
        return BoundState(E, self.basis(c, E), finite_series(self, c, E, level), c)


def hulthen2_rep(mu, nu, gamma, N, z=0.0, scale=1.0):
    """Symmetric matrix of the Hulthen case-2 recursion in the parameters (mu, nu, gamma).

    a_n = -n(n+mu)/(2n+mu+nu) + D_n [(n+(mu+nu)/2+1)^2 + gamma]
    b_n = sqrt(U_n L_{n+1}) [(n+(mu+nu)/2+1)^2 + gamma]
    """
    D, off = jacobi_sym(mu, nu, N)
    n = np.arange(N, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        first = np.where(n == 0, 0.0, -n * (n + mu) / (2 * n + mu + nu))
    br = _bracketed(n, mu, nu, gamma)
    return TridiagonalRep(first + D * br, off * br[:-1], z, scale)


def hulthen2_polynomial_rep(mu, nu, gamma, N):
    """The Jacobi matrix whose eigen-measure is the weight of the Hulthen case-2 polynomials."""
    if N < 2:
        raise ParameterError("need at least two recursion coefficients")
    return hulthen2_rep(mu, nu, gamma, N)


class HulthenCase3(_Hulthen):
    """beta = (mu+1)/2, alpha = (nu+1)/2 with free mu; V = C/(e^{lr}-1)^2 + A/(e^{lr}-1)."""

    id = CaseId.HulthenCase3
    required = ("lam", "A", "nu", "mu")

    def check(self, p, sign):
        require(p["mu"] > -1, f"HulthenCase3 needs mu > -1, got {p['mu']}")

    def C(self, case):
        p = case.params
        return p["lam"] ** 2 / 2 * (p["nu"] ** 2 - 1) / 4

    def basis(self, case, E=None):
        p = case.params
        return BasisSpec(Coordinate.jacobi_hulthen, (p["nu"] + 1) / 2, (p["mu"] + 1) / 2, p["nu"], p["lam"],
                         mu=p["mu"])

    def potential(self, case, r):
        iu = _inv_u(case.params["lam"], r)
        return self.C(case) * iu * iu + case.params["A"] * iu

    def rep(self, case, E, N):
        p = case.params
        lam, mu, nu = p["lam"], p["mu"], p["nu"]
        g = 2 * (E + p["A"] - self.C(case)) / lam**2
        D, off = jacobi_sym(mu, nu, N)
        n = np.arange(N, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            first = np.where(n == 0, 0.0, -n * (n + nu) / (2 * n + mu + nu))
        br = _bracketed(n, mu, nu, g)
        z = 2 * E / lam**2 + ((mu + 1) / 2) ** 2
        return TridiagonalRep(first + (1 - D) * br, -off * br[:-1], z, lam**2)

    def spectrum(self, case, n_max):
        p = case.params
        lam = p["lam"]
        k = np.arange(n_max + 1) + (p["nu"] + 1) / 2
        m = -k - 2 * (p["A"] - self.C(case)) / (lam**2 * k)
        m = m[m > 0]
        if not len(m):
            return empty_spectrum()
        return SpectrumResult(-(lam**2 / 8) * m**2, tuple({"mu": x - 1} for x in m))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        E = spec.energies[level]
        c = case.replace(mu=spec.quantized_basis[level]["mu"])
        return BoundState(E, self.basis(c), finite_series(self, c, E, level), c)
