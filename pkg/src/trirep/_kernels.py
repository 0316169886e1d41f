"""Inner loops: polynomial recurrences, forward recursion, Numerov steps."""

import numpy as np

from ._accel import kernel

RESCALE_THRESHOLD = 1e100


@kernel
def three_term(p, q, s, t):
    """Run ``y_{k+1} = (p_k + q_k t) y_k - s_k y_{k-1}`` from ``y_0 = 1``.

    ``p``, ``q``, ``s`` have length n; ``t`` is a 1-D array of arguments.
    Returns y_n(t).
    """
    prev = np.zeros_like(t)
    cur = np.ones_like(t)
    for k in range(p.shape[0]):
        nxt = (p[k] + q[k] * t) * cur - s[k] * prev
        prev = cur
        cur = nxt
    return cur


@kernel
def three_term_all(p, q, s, t):
    """Like :func:`three_term` but returns every y_0..y_n, shape (n+1, len(t))."""
    n = p.shape[0]
    out = np.empty((n + 1, t.shape[0]))
    out[0, :] = 1.0
    prev = np.zeros_like(t)
    for k in range(n):
        out[k + 1, :] = (p[k] + q[k] * t) * out[k, :] - s[k] * prev
        prev = out[k, :]
    return out


@kernel
def forward_recursion(a, b, z, nterms):
    """Regular solution of ``z f_n = a_n f_n + b_{n-1} f_{n-1} + b_n f_{n+1}``.

    Returns ``(f, logscale, bad)`` where the true coefficient is
    ``f[n] * exp(logscale[n])`` and ``bad`` is the first n with ``b_n == 0``
    (or -1).  Entries from ``bad + 1`` onward are left as NaN.
    """
    f = np.full(nterms, np.nan)
    logscale = np.zeros(nterms)
    f[0] = 1.0
    if nterms == 1:
        return f, logscale, -1
    if b[0] == 0.0:
        return f, logscale, 0
    f[1] = (z - a[0]) / b[0]
    acc = 0.0
    for n in range(1, nterms - 1):
        if b[n] == 0.0:
            return f, logscale, n
        fprev = f[n - 1]
        # f[n-1] was stored at the previous scale; bring it to the current one
        if logscale[n - 1] != logscale[n]:
            fprev = fprev * np.exp(logscale[n - 1] - logscale[n])
        nxt = ((z - a[n]) * f[n] - b[n - 1] * fprev) / b[n]
        big = max(abs(nxt), abs(f[n]))
        if big > RESCALE_THRESHOLD:
            nxt = nxt / big
            f[n] = f[n] / big
            acc += np.log(big)
            logscale[n] = acc
        f[n + 1] = nxt
        logscale[n + 1] = acc
    return f, logscale, -1


@kernel
def numerov(g, h, u0, u1):
    """Integrate ``u'' = g u`` on a uniform grid from two starting values.

    The array is renormalised whenever it exceeds the rescale threshold, so
    only ratios and signs are meaningful.
    """
    n = g.shape[0]
    u = np.empty(n)
    u[0] = u0
    u[1] = u1
    c = h * h / 12.0
    for i in range(1, n - 1):
        u[i + 1] = (2.0 * u[i] * (1.0 + 5.0 * c * g[i]) - u[i - 1] * (1.0 - c * g[i - 1])) / (
            1.0 - c * g[i + 1]
        )
        if abs(u[i + 1]) > RESCALE_THRESHOLD:
            for j in range(i + 2):
                u[j] /= RESCALE_THRESHOLD
    return u


@kernel
def count_nodes(u, start, stop):
    """Number of sign changes of ``u[start:stop]`` ignoring exact zeros."""
    count = 0
    last = 0.0
    for i in range(start, stop):
        v = u[i]
        if v == 0.0:
            continue
        if last != 0.0 and (v > 0.0) != (last > 0.0):
            count += 1
        last = v
    return count
