import math

import mpmath
import numpy as np
import pytest

import hyp_oracle as hyp
from trirep.errors import BracketError, ParameterError, WrongLevelError
from trirep.models import ModelCase, basis_spec, bound_spectrum, matrix_elements
from trirep.oracle import (QuadratureConfig, ShootingConfig, numerov_bound_energy, overlap, overlap_matrix,
                           quad_matrix, quad_matrix_element, spectrum_report, tridiagonality_report)

SET_A = [
    ("CoulombCase1", dict(Z=-1, ell=1, lam=1.3), "plus", 0.4),
    ("CoulombCase2", dict(Z=-1, B=0.5, ell=1, nu=1.2), "plus", -0.3),
    ("OscillatorCase1", dict(omega=1, ell=1, lam=1.4), "plus", 2.0),
    ("OscillatorCase2", dict(lam=1.1, B=0.7, ell=1, nu=0.8), "plus", 3.0),
    ("PowerLawCase1", dict(gamma=0.5, lam=1.2, ell=1, A=-0.4, B=-0.3), "plus", 0.0),
    ("PowerLawCase1", dict(gamma=-1, lam=1.2, ell=2, A=-0.5, B=0.8), "plus", 0.0),
    ("PowerLawCase2", dict(gamma=0.6, lam=1.0, ell=1, A=0.3, B=-0.5, nu=0.7), "plus", 0.0),
    ("MorseCase1", dict(lam=1, mu_scale=2, A=-5, B=1.3), "plus", -1.0),
    ("MorseCase2", dict(lam=1, mu_scale=2, A=-5, nu=2.3), "plus", -1.1),
    ("HulthenCase1", dict(lam=0.5, A=-1, B=0.3, nu=1.5), "plus", -0.2),
    ("HulthenCase1", dict(lam=0.5, A=-1, B=0.3, nu=1.5), "minus", -0.2),
    ("HulthenCase2", dict(lam=0.5, A=-1, B=0.2, nu=1.3), "plus", -0.2),
    ("HulthenCase3", dict(lam=0.5, A=-1, nu=1.5, mu=1.0), "plus", -0.2),
    ("RosenMorseCase1", dict(lam=1, A=-3, B=0.4, C=0.5), "plus", -2.0),
]
SET_B = [
    ("CoulombCase1", dict(Z=0.7, ell=2, lam=2.0), "plus", 1.1),
    ("CoulombCase2", dict(Z=-2, B=-0.2, ell=0, nu=0.4), "plus", -0.8),
    ("OscillatorCase1", dict(omega=1.5, ell=0, lam=0.9), "plus", 4.0),
    ("OscillatorCase2", dict(lam=0.8, B=-0.3, ell=2, nu=1.5), "plus", 1.7),
    ("PowerLawCase1", dict(gamma=1.5, lam=0.8, ell=0, A=0.2, B=0.4), "plus", 0.0),
    ("PowerLawCase2", dict(gamma=-0.7, lam=1.3, ell=2, A=-0.2, B=0.6, nu=1.2), "plus", 0.0),
    ("MorseCase1", dict(lam=0.7, mu_scale=1.5, A=-3, B=-0.4), "plus", -0.3),
    ("MorseCase2", dict(lam=1.3, mu_scale=3, A=-8, nu=0.6), "plus", -2.5),
    ("HulthenCase1", dict(lam=1.0, A=-2, B=-0.5, nu=2.2), "plus", -0.6),
    ("HulthenCase1", dict(lam=1.0, A=-2, B=0.5, nu=2.2), "minus", -0.6),
    ("HulthenCase2", dict(lam=1.0, A=-3, B=-0.1, nu=0.6), "plus", -0.5),
    ("HulthenCase3", dict(lam=0.8, A=-2, nu=2.0, mu=0.5), "plus", -0.4),
    ("RosenMorseCase1", dict(lam=1.5, A=-4, B=-0.6, C=-0.3), "plus", -1.0),
]


def _ids(sets):
    return [f"{c}-{s}-{i}" for i, (c, _, s, _) in enumerate(sets)]


@pytest.mark.parametrize("cid,p,sign,E", SET_A + SET_B, ids=_ids(SET_A + SET_B))
def test_tridiagonality_and_band_agreement(cid, p, sign, E):
    rep = tridiagonality_report(ModelCase(cid, p, sign), E, N=9)
    assert rep.offband < 1e-7
    assert rep.band_rel < 1e-6


def test_quadrature_element_examples():
    c = ModelCase("CoulombCase1", dict(Z=-1, ell=0, lam=1.0))
    E = 0.3
    F = matrix_elements(c, E, 6)
    assert abs(quad_matrix_element(c, 0, 5, E)) < 1e-10
    assert quad_matrix_element(c, 0, 0, E) == pytest.approx(F.scale * (F.diag[0] - F.shift), rel=1e-9)
    h = ModelCase("HulthenCase2", dict(lam=0.5, A=-1, B=0.2, nu=1.3))
    F = matrix_elements(h, -0.2, 4)
    assert quad_matrix_element(h, 1, 2, -0.2) == pytest.approx(F.scale * F.offdiag[1], rel=1e-6)


def test_quadrature_self_consistency():
    for cid, p, sign, E in SET_A[:4] + SET_A[6:8]:
        c = ModelCase(cid, p, sign)
        for tol in (1e-3, 1e-5):
            Q1, e1 = quad_matrix(c, E, 9, QuadratureConfig(tol=tol))
            Q2, e2 = quad_matrix(c, E, 9, QuadratureConfig(tol=tol / 2))
            assert np.abs(Q1 - Q2).max() <= e1 + e2


@pytest.mark.parametrize("cid,p,E", [("MorseCase1", dict(lam=1, mu_scale=2, A=-5, B=1.3), -1.0),
                                     ("RosenMorseCase1", dict(lam=1, A=-3, B=0.4, C=0.5), -2.0)])
def test_line_problems_through_the_radial_path(cid, p, E):
    c = ModelCase(cid, p)
    line, _ = quad_matrix(c, E, 6)
    radial, _ = quad_matrix(c, E, 6, radial_operator=True)
    np.testing.assert_allclose(radial, line, rtol=1e-13, atol=1e-15)
    assert quad_matrix_element(c, 2, 3, E, radial_operator=True) == pytest.approx(
        quad_matrix_element(c, 2, 3, E), rel=1e-13)


# -- overlaps ----------------------------------------------------------------


def test_orthonormal_bases():
    for c, E in [(ModelCase("OscillatorCase1", dict(omega=1, ell=1, lam=1.4)), None),
                 (ModelCase("MorseCase2", dict(lam=1, mu_scale=2, A=-5, nu=2.3)), None)]:
        S, _ = overlap_matrix(c, 6, E=E)
        np.testing.assert_allclose(S, np.eye(6), atol=1e-9)
        assert overlap(c, 0, 0) == pytest.approx(1.0, abs=1e-8)
        assert abs(overlap(c, 0, 1)) < 1e-8


def test_laguerre_r_gram_matrix():
    # one extra power of x: <n|n> = 2n + nu + 1, <n|n+1> = -sqrt((n+1)(n+nu+1))
    ell = 1.0
    nu = 2 * ell + 1
    c = ModelCase("CoulombCase1", dict(Z=-1, ell=ell, lam=1.3))
    S, _ = overlap_matrix(c, 6)
    n = np.arange(6)
    ref = np.diag(2 * n + nu + 1.0) - np.diag(np.sqrt((n[:-1] + 1) * (n[:-1] + nu + 1)), 1)
    ref = ref + np.triu(ref, 1).T
    np.testing.assert_allclose(S, ref, atol=1e-9)


@pytest.mark.parametrize("gamma", [-1.0, 0.5])
def test_power_law_measure(gamma):
    # dr = x^(1/gamma - 1) dx / (lambda |gamma|) for x = (lambda r)^gamma, integrated in x with mpmath
    c = ModelCase("PowerLawCase1", dict(gamma=gamma, lam=1.2, ell=2, A=-0.5, B=0.8))
    spec = basis_spec(c)
    for m, n in [(2, 2), (0, 1), (1, 3)]:
        Am, An = math.exp(spec.log_norm(m)), math.exp(spec.log_norm(n))

        def lag(k, x):
            return mpmath.binomial(k + spec.nu, k) * hyp._sum(k, [], [spec.nu + 1], x)

        def f(x):
            return (x ** (2 * spec.alpha + 1 / gamma - 1) * mpmath.exp(-2 * spec.beta * x)
                    * lag(m, x) * lag(n, x))

        ref = float(Am * An * mpmath.quad(f, [0, 10, mpmath.inf]) / (spec.lam * abs(gamma)))
        assert overlap(c, m, n) == pytest.approx(ref, rel=1e-8, abs=1e-12)


def test_quadrature_config_validation():
    with pytest.raises(ParameterError):
        QuadratureConfig(limit=8)
    with pytest.raises(ParameterError):
        QuadratureConfig(tol=0)
    with pytest.raises(ParameterError):
        overlap(ModelCase("CoulombCase1", dict(Z=-1, ell=0, lam=1)), -1, 0)


# -- Numerov -----------------------------------------------------------------


def test_numerov_examples():
    c = ModelCase("CoulombCase1", dict(Z=-1, ell=0, lam=1))
    assert numerov_bound_energy(c, 0) == pytest.approx(-0.5, abs=1e-6)
    o = ModelCase("OscillatorCase1", dict(omega=1, ell=1, lam=1))
    assert numerov_bound_energy(o, 0) == pytest.approx(2.5, abs=1e-6)
    h = ModelCase("HulthenCase1", dict(lam=0.5, A=-1, B=0, nu=1.0))  # nu = 1 gives C = 0
    E0 = bound_spectrum(h, 0).energies[0]
    assert numerov_bound_energy(h, 0) == pytest.approx(E0, rel=1e-6)


@pytest.mark.parametrize("ell", [0, 1])
def test_numerov_fourth_order(ell):
    c = ModelCase("CoulombCase1", dict(Z=-1, ell=ell, lam=1))
    exact = -0.5 / (ell + 1) ** 2
    errs = [numerov_bound_energy(c, 0, ShootingConfig(points=p, richardson=False)) - exact for p in (500, 1000, 2000)]
    for a, b in zip(errs, errs[1:]):
        assert 13 < a / b < 19


def test_numerov_bracket_errors():
    c = ModelCase("CoulombCase1", dict(Z=-1, ell=0, lam=1))
    with pytest.raises(BracketError):
        numerov_bound_energy(c, 0, ShootingConfig(bracket=(-0.4, -0.3)))
    with pytest.raises(WrongLevelError):
        numerov_bound_energy(c, 0, ShootingConfig(bracket=(-0.2, -0.1)))
    assert numerov_bound_energy(c, 1, ShootingConfig(bracket=(-0.2, -0.1))) == pytest.approx(-0.125, rel=1e-9)
    m = ModelCase("MorseCase1", dict(lam=1, mu_scale=2, A=-5, B=1))
    with pytest.raises(BracketError):
        numerov_bound_energy(m, 2)


def test_shooting_config_validation():
    with pytest.raises(ParameterError):
        ShootingConfig(step=-1.0)
    with pytest.raises(ParameterError):
        ShootingConfig(bracket=(1.0, 1.0))
    with pytest.raises(ParameterError):
        ShootingConfig(points=10)
    with pytest.raises(ParameterError):
        numerov_bound_energy(ModelCase("CoulombCase1", dict(Z=-1, ell=0, lam=1)), 0.5)


SPECTRA = [
    ("CoulombCase2", dict(Z=-1, B=0.5, ell=1, nu=0.3)),
    ("OscillatorCase2", dict(lam=1.1, B=0.7, ell=1, nu=0.2)),
    ("MorseCase2", dict(lam=1, mu_scale=2, A=-7, nu=0.5)),
    ("HulthenCase3", dict(lam=0.5, A=-3, nu=1.5, mu=0)),
]


@pytest.mark.parametrize("cid,p", SPECTRA, ids=[c for c, _ in SPECTRA])
def test_spectrum_report(cid, p):
    for formula, numerov in spectrum_report(ModelCase(cid, p), levels=3):
        assert numerov == pytest.approx(formula, rel=1e-6)
