"""Gamma-function helpers and terminating hypergeometric sums.

The finite sums here are the independent oracles for the recurrence
evaluators in :mod:`trirep.orthopoly`; nothing in the main evaluation path
calls them.
"""

import numpy as np
from scipy import special


def lgamma(x):
    """Real log|Gamma(x)|."""
    return special.gammaln(x)


def log_abs_gamma(z):
    """log|Gamma(z)| for complex z (real part of the principal log-gamma)."""
    return np.real(special.loggamma(np.asarray(z, dtype=complex)))


def abs_gamma(z):
    """|Gamma(z)| for complex z."""
    return np.exp(log_abs_gamma(z))


def log_gamma_ratio(num, den):
    """log(prod Gamma(num_i) / prod Gamma(den_j)) for positive real arguments."""
    return float(sum(lgamma(a) for a in num) - sum(lgamma(b) for b in den))


def pochhammer_terms(a, n):
    """Return [(a)_0, (a)_1, ..., (a)_n] (complex or real a)."""
    out = [1.0 + 0 * a]
    for k in range(n):
        out.append(out[-1] * (a + k))
    return out


def hyp1f1_terminating(n, c, x):
    """1F1(-n; c; x) as a finite sum."""
    total = 0.0
    term = 1.0
    for k in range(n + 1):
        total += term
        term *= (-n + k) * x / ((c + k) * (k + 1))
    return total


def hyp2f1_terminating(n, b, c, x):
    """2F1(-n, b; c; x) as a finite sum; b, c, x may be complex."""
    total = 0.0
    term = 1.0 + 0.0 * (b + c + x)
    for k in range(n + 1):
        total = total + term
        term = term * (-n + k) * (b + k) * x / ((c + k) * (k + 1))
    return total


def hyp3f2_terminating_unit(n, b1, b2, c1, c2):
    """3F2(-n, b1, b2; c1, c2; 1) as a finite sum."""
    total = 0.0
    term = 1.0 + 0.0 * (b1 + b2)
    for k in range(n + 1):
        total = total + term
        term = term * (-n + k) * (b1 + k) * (b2 + k) / ((c1 + k) * (c2 + k) * (k + 1))
    return total


# -- hypergeometric closed forms of the polynomial families (oracles) --------


def laguerre_hyp(n, nu, x):
    pref = np.exp(log_gamma_ratio([n + nu + 1], [n + 1, nu + 1]))
    return pref * hyp1f1_terminating(n, nu + 1.0, x)


def jacobi_hyp(n, mu, nu, x):
    pref = np.exp(log_gamma_ratio([n + mu + 1], [n + 1, mu + 1]))
    return pref * hyp2f1_terminating(n, n + mu + nu + 1.0, mu + 1.0, (1.0 - x) / 2.0)


def pollaczek_hyp(n, mu, theta, x):
    """Complex-valued hypergeometric form; the imaginary part should vanish."""
    pref = np.exp(log_gamma_ratio([n + 2 * mu], [n + 1, 2 * mu]))
    arg = 1.0 - np.exp(-2j * theta)
    return pref * np.exp(1j * n * theta) * hyp2f1_terminating(n, mu + 1j * x, 2.0 * mu, arg)


def hyper_pollaczek_hyp(n, mu, theta, x):
    pref = np.exp(log_gamma_ratio([n + 2 * mu], [n + 1, 2 * mu]))
    arg = 1.0 - np.exp(2.0 * theta)
    return pref * np.exp(-n * theta) * hyp2f1_terminating(n, mu + x, 2.0 * mu, arg)


def cdh_hyp(n, mu, a, b, x):
    """3F2(-n, mu+ix, mu-ix; mu+a, mu+b; 1) with the product taken in real form."""
    total = 0.0
    term = 1.0
    for k in range(n + 1):
        total += term
        term *= (-n + k) * ((mu + k) ** 2 + x * x) / ((mu + a + k) * (mu + b + k) * (k + 1))
    return total


def modified_cdh_hyp(n, mu, a, b, x):
    """3F2(-n, mu+x, mu-x; mu+a, mu+b; 1)."""
    return hyp3f2_terminating_unit(n, mu + x, mu - x, mu + a, mu + b)
