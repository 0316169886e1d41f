"""Hyperbolic Rosen-Morse potential on the line in the x = tanh(lambda y) Jacobi basis."""

import math

import numpy as np

from ..tridiag import TridiagonalRep
from ._common import BoundState, Handler, empty_spectrum, jacobi_sym, require, unit
from .base import BasisSpec, CaseId, Coordinate, SpectrumResult


class RosenMorseCase1(Handler):
    """(alpha, beta) = (nu/2, mu/2) with mu, nu fixed by E and C;
    V = C tanh(ly) + A sech^2(ly) +/- B tanh(ly) sech^2(ly)."""

    id = CaseId.RosenMorseCase1
    required = ("lam", "A", "B", "C")
    radial = False

    def check_energy(self, case, E):
        C = case.params["C"]
        require(E < -abs(C), f"RosenMorseCase1 needs E < -|C| = {-abs(C)}, got E = {E}")

    def indices(self, case, E):
        self.check_energy(case, E)
        p = case.params
        return math.sqrt(-2 * (E - p["C"])) / p["lam"], math.sqrt(-2 * (E + p["C"])) / p["lam"]

    def effective(self, case):
        p = dict(case.params)
        if case.sign_choice == "minus":
            p["B"] = -p["B"]
        return p

    def basis(self, case, E):
        mu, nu = self.indices(case, E)
        return BasisSpec(Coordinate.jacobi_tanh, nu / 2, mu / 2, nu, case.params["lam"], mu=mu)

    def potential(self, case, y):
        p = self.effective(case)
        t = np.tanh(p["lam"] * y)
        with np.errstate(over="ignore"):
            s2 = 1.0 / np.cosh(p["lam"] * y) ** 2
        return p["C"] * t + p["A"] * s2 + p["B"] * t * s2

    def rep(self, case, E, N):
        mu, nu = self.indices(case, E)
        p = self.effective(case)
        lam, A, B = p["lam"], p["A"], p["B"]
        D, off = jacobi_sym(mu, nu, N)
        n = np.arange(N, dtype=float)
        diag = 2 * (A - B) / lam**2 - 0.25 + (n + (mu + nu + 1) / 2) ** 2 + 4 * B / lam**2 * D
        return TridiagonalRep(diag, 4 * B / lam**2 * off, 0.0, lam**2 / 2)

    def polynomials(self, case, E, f):
        from .hulthen import jacobi_rescaling

        mu, nu = self.indices(case, E)
        c = jacobi_rescaling(np.arange(len(f)), mu, nu)
        return f * c / c[0]

    def spectrum(self, case, n_max):
        p = self.effective(case)
        require(p["B"] == 0, f"RosenMorseCase1 has a closed-form spectrum only for B = 0, got B = {p['B']}")
        lam, A, C = p["lam"], p["A"], p["C"]
        require(A < lam**2 / 8, f"RosenMorseCase1 bound states need A < lambda^2/8, got A = {A}")
        q = math.sqrt(lam**2 / 4 - 2 * A) / lam - np.arange(n_max + 1) - 0.5
        q = q[q > 0]
        mu = q + C / (lam**2 * q)
        nu = q - C / (lam**2 * q)
        keep = (mu > 0) & (nu > 0)
        # once one index turns negative the window has closed for good
        stop = np.argmin(keep) if not keep.all() else len(keep)
        q, mu, nu = q[:stop], mu[:stop], nu[:stop]
        if not len(q):
            return empty_spectrum()
        E = -(lam**2 / 2) * (q**2 + (C / lam**2) ** 2 / q**2)
        return SpectrumResult(E, tuple({"mu": a, "nu": b} for a, b in zip(mu, nu)))

    def bound_state(self, case, level):
        spec = self.level_index(case, level)
        E = spec.energies[level]
        return BoundState(E, self.basis(case, E), unit(level), case)
