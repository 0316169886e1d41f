import math

import numpy as np
import pytest
from scipy import integrate, special
from scipy.integrate import solve_ivp

from trirep.errors import DegenerateCouplingError, DomainError, ParameterError, RangeError
from trirep.models import (ModelCase, basis_eval, basis_spec, bound_spectrum, bound_state, expansion_coeffs, hulthen1_recursion,
                           matrix_elements, potential_eval, wavefunction_eval)
from trirep.models.hulthen import hulthen2_rep, jacobi_rescaling
from trirep.orthopoly import jacobi_multiplication


def case(cid, sign="plus", **p):
    return ModelCase(cid, p, sign)


# -- construction ------------------------------------------------------------


def test_parameter_validation():
    with pytest.raises(ParameterError, match="unknown model"):
        ModelCase("SquareWell", {})
    with pytest.raises(ParameterError, match="unknown parameter"):
        case("CoulombCase1", Z=-1, ell=0, lam=1, omega=2)
    with pytest.raises(ParameterError, match="missing"):
        case("CoulombCase1", Z=-1, ell=0)
    with pytest.raises(ParameterError):
        case("CoulombCase1", Z=-1, ell=0, lam=-1)
    with pytest.raises(ParameterError):
        ModelCase("CoulombCase1", dict(Z=-1, ell=0, lam=1), "both")
    for g in (0, 1, 2):
        with pytest.raises(ParameterError):
            case("PowerLawCase1", gamma=g, lam=1, ell=0, A=0, B=0)


def test_cases_are_immutable_and_hashable():
    c = case("CoulombCase1", Z=-1, ell=0, lam=1)
    with pytest.raises(TypeError):
        c.params["Z"] = 2
    assert c.Z == -1.0
    assert hash(c) == hash(case("CoulombCase1", Z=-1, ell=0, lam=1))
    assert c.replace(Z=-2).Z == -2.0 and c.Z == -1.0


def test_energy_admissibility():
    with pytest.raises(ParameterError):
        matrix_elements(case("CoulombCase2", Z=-1, B=0.5, ell=1, nu=1.2), 0.3, 5)
    with pytest.raises(ParameterError):
        matrix_elements(case("MorseCase1", lam=1, mu_scale=2, A=-5, B=1), 0.2, 5)
    with pytest.raises(ParameterError):
        matrix_elements(case("HulthenCase1", lam=0.5, A=-1, B=0.3, nu=1.5), 0.0, 5)
    with pytest.raises(ParameterError):
        matrix_elements(case("PowerLawCase1", gamma=0.5, lam=1, ell=0, A=-0.4, B=-0.3), 0.1, 5)


# -- potentials and bases ----------------------------------------------------


def test_potential_examples():
    h = case("HulthenCase1", lam=0.5, A=0.0, B=0.7, nu=1.0)  # nu = 1 makes C = 0
    r = np.linspace(0.1, 5, 7)
    np.testing.assert_allclose(potential_eval(h, r), 0.7 * np.exp(-0.5 * r), rtol=1e-14)
    rm = case("RosenMorseCase1", lam=1, A=-3, B=0.4, C=0.5)
    assert potential_eval(rm, 0.0) == pytest.approx(-3.0)
    assert potential_eval(case("CoulombCase2", Z=-1, B=0.5, ell=0, nu=1.2), 1.0) == pytest.approx(-0.75)
    with pytest.raises(DomainError):
        potential_eval(case("CoulombCase1", Z=-1, ell=0, lam=1), 0.0)
    with pytest.raises(DomainError):
        potential_eval(case("CoulombCase1", Z=-1, ell=0, lam=1), -1.0)


def test_hulthen_sign_branch_map():
    A, B = -1.0, 0.3
    minus = case("HulthenCase1", "minus", lam=0.5, A=A, B=B, nu=1.5)
    plus = case("HulthenCase1", "plus", lam=0.5, A=A + B, B=-B, nu=1.5)
    r = np.linspace(0.05, 20, 400)
    np.testing.assert_allclose(potential_eval(minus, r), potential_eval(plus, r), rtol=1e-12, atol=1e-14)


def test_basis_boundary_and_gram_structure():
    # the x = lambda r Laguerre basis carries one extra power of x relative to
    # the Laguerre weight, so its Gram matrix is tridiagonal with 2n + nu + 1 on the diagonal
    ell = 1.0
    nu = 2 * ell + 1
    c = case("CoulombCase1", Z=-1, ell=ell, lam=1.3)
    assert basis_eval(c, 3, 0.0) == 0.0

    def gram(m, n):
        return integrate.quad(lambda r: basis_eval(c, m, r) * basis_eval(c, n, r), 0, np.inf, limit=200)[0]

    for n in (0, 1, 4):
        assert gram(n, n) == pytest.approx(2 * n + nu + 1, rel=1e-10)
    assert gram(2, 3) == pytest.approx(-math.sqrt(3 * (3 + nu)), rel=1e-10)
    assert abs(gram(1, 4)) < 1e-10


def test_hulthen_ground_basis_value_at_x_zero():
    lam, E, nu = 0.5, -0.2, 1.5
    c = case("HulthenCase1", lam=lam, A=-1, B=0.3, nu=nu)
    spec = basis_spec(c, E)
    A0 = math.exp(spec.log_norm(0))
    # x = 0: both weight factors equal one and P_0 = 1
    assert basis_eval(c, 0, math.log(2) / lam, E=E) == pytest.approx(A0, rel=1e-14)
    # the norm integral in x: dr = dx / (lambda (1 - x)), weight (1-x)^(mu-1) (1+x)^(nu+1)
    mu = 2 * math.sqrt(-2 * E) / lam
    beta_int = 2 ** (mu + nu + 1) * special.beta(mu, nu + 2) / lam
    val, _ = integrate.quad(lambda r: basis_eval(c, 0, r, E=E) ** 2, 0, np.inf, limit=200)
    assert val == pytest.approx(A0**2 * beta_int, rel=1e-10)


# -- matrix elements ---------------------------------------------------------


def test_coulomb1_elements_read_off():
    Z, ell, lam, E, N = -1.0, 1.0, 1.3, 0.4, 6
    rep = matrix_elements(case("CoulombCase1", Z=Z, ell=ell, lam=lam), E, N)
    sm, sp = 2 * E / lam**2 - 0.25, 2 * E / lam**2 + 0.25
    n = np.arange(N)
    F = rep.scale * rep.dense()
    # diagonal of H - E carries -sigma_- (checked against quadrature in the oracle tests)
    ref = (lam**2 / 2) * (np.diag(-2 * (n + ell + 1) * sm + 2 * Z / lam)
                          + np.diag(sp * np.sqrt((n[:-1] + 1) * (n[:-1] + 2 * ell + 2)), 1)
                          + np.diag(sp * np.sqrt((n[:-1] + 1) * (n[:-1] + 2 * ell + 2)), -1))
    np.testing.assert_allclose(F, ref, rtol=1e-13, atol=1e-14)


def test_oscillator_off_diagonal_vanishes_at_matched_scale():
    rep = matrix_elements(case("OscillatorCase1", omega=1.3, ell=1, lam=1.3), 2.0, 8)
    assert np.all(rep.offdiag == 0)


def test_hulthen3_is_hulthen2_with_indices_exchanged():
    lam, A, nu, mu, E, N = 0.5, -1.0, 1.5, 1.0, -0.2, 10
    c = case("HulthenCase3", lam=lam, A=A, nu=nu, mu=mu)
    rep3 = matrix_elements(c, E, N)
    C = lam**2 / 2 * (nu * nu - 1) / 4
    g = 2 * (E + A - C) / lam**2
    rep2 = hulthen2_rep(nu, mu, g, N)
    np.testing.assert_allclose(rep3.diag, rep2.diag, rtol=1e-12)
    np.testing.assert_allclose(rep3.offdiag, -rep2.offdiag, rtol=1e-12)


def test_hulthen_deformation_limit_is_jacobi():
    mu, nu, N = 1.0, 1.5, 30
    d, l, u = hulthen1_recursion(mu, nu, 0.0, N)
    D, L, U = jacobi_multiplication(N - 1, mu, nu)
    np.testing.assert_allclose(d, D, rtol=1e-12)
    np.testing.assert_array_equal(l, L)
    np.testing.assert_array_equal(u, U)


def test_hulthen1_polynomials_obey_the_deformed_recursion():
    # rescaled coefficients of the case-1 representation satisfy the
    # non-symmetric recursion z P_n = d_n P_n + L_n P_{n-1} + U_n P_{n+1}
    lam, A, B, nu, E, N = 0.5, -1.0, 0.3, 1.5, -0.2, 20
    c = case("HulthenCase1", lam=lam, A=A, B=B, nu=nu)
    P = expansion_coeffs(c, E, N).polynomials
    mu = 2 * math.sqrt(-2 * E) / lam
    d, L, U = hulthen1_recursion(mu, nu, lam**2 / (2 * B), N)
    C = lam**2 / 2 * (nu * nu - 1) / 4
    z = (C - A - E) / B
    lhs = z * P[1:-1]
    rhs = d[1:-1] * P[1:-1] + L[1:-1] * P[:-2] + U[1:-1] * P[2:]
    np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-12 * np.abs(P).max())
    assert z * P[0] == pytest.approx(d[0] * P[0] + U[0] * P[1], rel=1e-12)


def test_rescaling_factors():
    mu, nu = 1.0, 1.5
    n = np.arange(5)
    c = jacobi_rescaling(n, mu, nu)
    ref = [math.sqrt(math.gamma(k + mu + 1) * math.gamma(k + nu + 1)
                     / (math.gamma(k + 1) * math.gamma(k + mu + nu + 1) * (2 * k + mu + nu + 1))) for k in n]
    np.testing.assert_allclose(c, ref, rtol=1e-13)


# -- closed forms ------------------------------------------------------------


CLOSED = [
    ("CoulombCase1", dict(Z=-1, ell=1, lam=1.3), 0.4),
    ("CoulombCase1", dict(Z=0.7, ell=0, lam=1.0), 2.0),
    ("CoulombCase2", dict(Z=-1, B=0.5, ell=1, nu=1.2), -0.3),
    ("CoulombCase2", dict(Z=-1, B=-0.5, ell=0, nu=1.2), -0.3),
    ("OscillatorCase1", dict(omega=1, ell=1, lam=0.7), 2.0),
    ("OscillatorCase1", dict(omega=1, ell=1, lam=1.4), 2.0),
    ("OscillatorCase2", dict(lam=1.1, B=0.7, ell=1, nu=0.8), 3.0),
    ("OscillatorCase2", dict(lam=1.1, B=-0.7, ell=0, nu=0.8), 3.0),
    ("PowerLawCase1", dict(gamma=0.5, lam=1.2, ell=1, A=-0.4, B=-0.3), 0.0),
    ("PowerLawCase1", dict(gamma=-1, lam=1.2, ell=2, A=-0.5, B=0.8), 0.0),
    ("PowerLawCase1", dict(gamma=-1, lam=1.2, ell=2, A=-0.5, B=0.1), 0.0),
    ("PowerLawCase2", dict(gamma=0.6, lam=1.0, ell=1, A=0.3, B=-0.5, nu=0.7), 0.0),
    ("MorseCase1", dict(lam=1, mu_scale=2, A=-5, B=-1.3), -1.0),
    ("MorseCase1", dict(lam=1, mu_scale=2, A=-5, B=1.3), -1.0),
    ("MorseCase2", dict(lam=1, mu_scale=2, A=-5, nu=2.3), -1.1),
    ("MorseCase2", dict(lam=1, mu_scale=2, A=-5, nu=2.3), 0.8),
]


@pytest.mark.parametrize("cid,p,E", CLOSED, ids=[f"{c}-{i}" for i, (c, _, _) in enumerate(CLOSED)])
def test_closed_form_matches_recursion(cid, p, E):
    c = ModelCase(cid, p)
    closed = expansion_coeffs(c, E, 26, method="closed")
    rec = expansion_coeffs(c, E, 26, method="recursion")
    assert closed.method == "closed" and rec.method == "recursion"
    assert closed.coeffs[0] == 1.0
    np.testing.assert_allclose(closed.coeffs, rec.coeffs, rtol=1e-8)


def test_coulomb1_first_coefficient_prefactor():
    ell = 1.0
    res = expansion_coeffs(case("CoulombCase1", Z=-1, ell=ell, lam=1.3), 0.4, 5)
    assert res.f0_raw == pytest.approx(math.sqrt(1 / math.gamma(2 * ell + 2)))


def test_printed_variants_disagree_with_recursion():
    checks = [
        ("OscillatorCase1", dict(omega=1, ell=1, lam=1.4), 2.0, dict(printed_index=True)),
        ("OscillatorCase2", dict(lam=1.1, B=0.7, ell=1, nu=0.8), 3.0, dict(printed_index=True)),
        ("MorseCase1", dict(lam=1, mu_scale=2, A=-5, B=-1.3), -1.0, dict(printed_angle=True)),
        ("MorseCase2", dict(lam=1, mu_scale=2, A=-5, nu=2.3), -1.1, dict(printed_argument=True)),
    ]
    for cid, p, E, kw in checks:
        c = ModelCase(cid, p)
        f, _ = c.handler.closed_form(c, E, 26, **kw)
        g = expansion_coeffs(c, E, 26, method="recursion").coeffs
        assert np.max(np.abs(f / f[0] - g) / np.abs(g)) > 1e-3, cid


def test_hulthen_has_no_closed_form():
    c = case("HulthenCase2", lam=0.5, A=-1, B=0.2, nu=1.3)
    assert expansion_coeffs(c, -0.2, 10).method == "recursion"
    with pytest.raises(ParameterError):
        expansion_coeffs(c, -0.2, 10, method="closed")


# -- spectra -----------------------------------------------------------------


def test_spectrum_examples():
    c1 = case("CoulombCase1", Z=-1, ell=0, lam=1)
    s = bound_spectrum(c1, 3)
    np.testing.assert_allclose(s.energies, [-0.5, -0.125, -1 / 18, -1 / 32], rtol=1e-15)
    assert s.quantized_basis[0]["lam"] == pytest.approx(2.0)
    o1 = case("OscillatorCase1", omega=1, ell=0, lam=1)
    np.testing.assert_allclose(bound_spectrum(o1, 4).energies, 2 * np.arange(5) + 1.5, rtol=1e-15)


def test_morse_window_and_levels():
    m = case("MorseCase1", lam=1, mu_scale=2, A=-5, B=1)
    E = bound_spectrum(m, 10).energies
    # A/mu = -2.5: levels while -2.5 + n + 1/2 < 0
    np.testing.assert_allclose(E, [-2.0, -0.5], rtol=1e-15)
    m2 = case("MorseCase2", lam=1, mu_scale=2, A=-5, nu=0.5)
    np.testing.assert_array_equal(bound_spectrum(m2, 10).energies, E)


def test_degeneracies():
    for ell in (0.0, 1.0, 2.0):
        a = bound_spectrum(case("CoulombCase2", Z=-1, B=0.0, ell=ell, nu=0.7), 6).energies
        b = bound_spectrum(case("CoulombCase1", Z=-1, ell=ell, lam=1), 6).energies
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=0)
        a = bound_spectrum(case("OscillatorCase2", lam=1.3, B=0.0, ell=ell, nu=0.7), 6).energies
        b = bound_spectrum(case("OscillatorCase1", omega=1.3, ell=ell, lam=1.3), 6).energies
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=0)


def test_spectra_are_monotone_and_windows_close():
    cases = [
        case("HulthenCase1", lam=0.5, A=-2, B=0, nu=1.5),
        case("HulthenCase2", lam=0.5, A=-2, B=0.3, nu=1.3),
        case("HulthenCase3", lam=0.5, A=-2, nu=1.5, mu=0),
        case("RosenMorseCase1", lam=1, A=-6, B=0, C=0.5),
        case("MorseCase1", lam=1, mu_scale=2, A=-5, B=1),
    ]
    for c in cases:
        E = bound_spectrum(c, 200).energies
        assert 1 <= len(E) < 200, c.id
        assert np.all(np.diff(E) > 0), c.id
        assert np.all(E < 0), c.id


def test_empty_spectrum_is_not_an_error():
    c = case("MorseCase1", lam=1, mu_scale=2, A=0.5, B=1)
    assert len(bound_spectrum(c, 5)) == 0
    with pytest.raises(RangeError):
        bound_state(c, 0)


def test_spectrum_preconditions():
    with pytest.raises(ParameterError):
        bound_spectrum(case("HulthenCase1", lam=0.5, A=-2, B=0.1, nu=1.5), 3)
    with pytest.raises(ParameterError):
        bound_spectrum(case("MorseCase1", lam=1, mu_scale=2, A=-5, B=0.3), 3)
    with pytest.raises(ParameterError):
        bound_spectrum(case("RosenMorseCase1", lam=1, A=-6, B=0.2, C=0.5), 3)


def test_power_law_quantisation_decouples_the_recursion():
    g, lam = 0.5, 1.2
    B = (g * lam**g / 2) ** 2
    c = case("PowerLawCase1", gamma=g, lam=lam, ell=1, A=-0.4, B=B)
    rep = matrix_elements(c, 0.0, 6)
    assert np.all(rep.offdiag == 0.0)
    with pytest.raises(DegenerateCouplingError) as exc:
        expansion_coeffs(c, 0.0, 6, method="recursion")
    assert exc.value.index == 0


# -- wavefunctions -----------------------------------------------------------


def test_hydrogen_ground_state():
    c = case("CoulombCase1", Z=-1, ell=0, lam=1)
    r = np.linspace(0, 12, 200)
    psi = wavefunction_eval(c, r, level=0)
    np.testing.assert_allclose(psi, 2 * r * np.exp(-r), rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("level", [0, 1, 2, 3])
def test_oscillator_node_counts(level):
    c = case("OscillatorCase1", omega=1, ell=0, lam=1)
    r = np.linspace(1e-3, 8, 4000)
    psi = wavefunction_eval(c, r, level=level)
    assert np.count_nonzero(np.diff(np.sign(psi[np.abs(psi) > 1e-12])) != 0) == level


def test_invalid_levels():
    c = case("MorseCase1", lam=1, mu_scale=2, A=-5, B=1)
    with pytest.raises(RangeError):
        wavefunction_eval(c, [0.0], level=2)
    with pytest.raises(RangeError):
        wavefunction_eval(c, [0.0], level=-1)
    with pytest.raises(ParameterError):
        wavefunction_eval(c, [0.0])


DIAGONAL = [
    ("CoulombCase1", dict(Z=-1, ell=1, lam=1)),
    ("CoulombCase2", dict(Z=-1, B=0.5, ell=1, nu=0.3)),
    ("OscillatorCase1", dict(omega=1.2, ell=1, lam=1)),
    ("OscillatorCase2", dict(lam=1.1, B=0.7, ell=1, nu=0.2)),
    ("MorseCase1", dict(lam=1, mu_scale=2, A=-7, B=1)),
    ("MorseCase2", dict(lam=1, mu_scale=2, A=-7, nu=0.5)),
    ("HulthenCase1", dict(lam=0.5, A=-3, B=0, nu=1.5)),
    ("HulthenCase2", dict(lam=0.5, A=-3, B=0.3, nu=1.3)),
    ("HulthenCase3", dict(lam=0.5, A=-3, nu=1.5, mu=0)),
    ("RosenMorseCase1", dict(lam=1, A=-9, B=0, C=0.5)),
]


def _support(c, levels):
    # grid wide enough that every level has decayed below 1e-13 of its peak
    line = c.handler.radial is False
    R = 4.0
    while True:
        r = np.linspace(-R if line else 0.0, R, 4001)
        psi = np.array([wavefunction_eval(c, r, level=k) for k in range(levels)])
        ends = np.abs(psi[:, [0, -1]]).max() if line else np.abs(psi[:, -1]).max()
        if ends < 1e-13 * np.abs(psi).max():
            return r[0], R
        R *= 1.5


@pytest.mark.parametrize("cid,p", DIAGONAL, ids=[c for c, _ in DIAGONAL])
def test_bound_states_orthonormal(cid, p):
    c = ModelCase(cid, p)
    levels = min(4, len(bound_spectrum(c, 3)))
    assert levels >= 2
    lo, hi = _support(c, levels)
    r = np.linspace(lo, hi, 40001)
    psi = np.array([wavefunction_eval(c, r, level=k) for k in range(levels)])
    G = integrate.simpson(psi[:, None, :] * psi[None, :, :], x=r, axis=-1)
    np.testing.assert_allclose(G, np.eye(levels), atol=1e-7)


def _coulomb_numeric(ell, E, r):
    def rhs(x, y):
        return [y[1], 2 * (-1 / x + ell * (ell + 1) / (2 * x * x) - E) * y[0]]

    r0 = 1e-6
    y0 = [r0 ** (ell + 1), (ell + 1) * r0**ell]
    return solve_ivp(rhs, (r0, r[-1]), y0, t_eval=r, rtol=1e-12, atol=1e-20, method="DOP853").y[0]


def test_continuum_series_shape():
    # the series converges pointwise but slowly for E > 0
    c = case("CoulombCase1", Z=-1, ell=0, lam=1)
    r = np.linspace(0.05, 6, 120)
    u = _coulomb_numeric(0, 0.5, r)
    errs = []
    for N in (60, 800):
        psi = wavefunction_eval(c, r, E=0.5, N=N)
        s = (psi @ u) / (u @ u)
        errs.append(np.abs(psi - s * u).max() / np.abs(s * u).max())
    assert errs[0] < 0.05
    assert errs[1] < 0.01
