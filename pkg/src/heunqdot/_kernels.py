"""Numerov integration kernels for the shooting eigensolver.

The two lattice marches below are the hot inner loops of every oracle run
(tens of millions of sequential steps per eigenvalue sweep), so they are
JIT-compiled with numba by default. Setting the environment variable
HEUNQDOT_JIT=0 selects the pure-Python fallback path instead: same functions,
no compilation. benchmarks/bench_shooting.py times both paths.

The radial equation is integrated as u'' = g(r) u with

    g(r) = coul2/r + omega^2 r^2 + (l^2 - 1/4)/r^2 - 2*eta

on the uniform lattice r_i = r0 + i*h, i = 0..n, using the Numerov scheme
(O(h^4) global error). Near the origin u ~ r^(l+1/2) is not lattice-smooth
(every derivative of r^(1/2) diverges at 0, and for l = 0 the admixed
irregular solution r^(1/2) ln r never decays away relative to the regular
one), so the outward march anchors on the regular Frobenius series instead:
the series is summed to machine precision on [0, r_(i_start)] and the Numerov
recursion only takes over from i_start, far enough out that h^6 u''''''/u is
negligible. The inward march starts from a WKB-scaled decaying tail at r_n.
"""

from __future__ import annotations

import math
import os

import numpy as np

_flag = os.environ.get("HEUNQDOT_JIT", "1").strip().lower()
JIT_REQUESTED = _flag not in ("0", "false", "off", "no")

if JIT_REQUESTED:
    try:
        from numba import njit
        JIT_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False

        def njit(*args, **kwargs):
            def wrap(f):
                return f
            return wrap
else:
    JIT_ENABLED = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f
        return wrap

SERIES_TERMS = 40


@njit(cache=True)
def fill_outward(eta, omega, l, coul2, r0, h, i_start, i_stop, u):
    """March the regular solution outward, filling u[0..i_stop].

    u[0..i_start] comes from the Frobenius series r^(l+1/2) sum c_p r^p
    (c_0 = 1), the rest from the Numerov recursion. Returns True on success,
    False on a non-finite value (step-size failure). A prefix rescale by
    1e-150 guards against overflow; rescaling by a positive factor changes
    neither node locations nor matching ratios.
    """
    s = l + 0.5
    w2 = omega * omega
    lfac = l * l - 0.25
    h2 = h * h

    # series for u = r^s sum d_m r^m:
    #   d_m m(m+2l) = coul2 d_{m-1} - 2 eta d_{m-2} + omega^2 d_{m-4}
    d = np.zeros(SERIES_TERMS + 1)
    d[0] = 1.0
    for m in range(1, SERIES_TERMS + 1):
        num = coul2 * d[m - 1]
        if m >= 2:
            num -= 2.0 * eta * d[m - 2]
        if m >= 4:
            num += w2 * d[m - 4]
        d[m] = num / (m * (m + 2.0 * l))

    for i in range(i_start + 1):
        r = r0 + i * h
        acc = 0.0
        for m in range(SERIES_TERMS, -1, -1):
            acc = acc * r + d[m]
        u[i] = r ** s * acc

    ra = r0 + (i_start - 1) * h
    rb = r0 + i_start * h
    g_prev = coul2 / ra + w2 * ra * ra + lfac / (ra * ra) - 2.0 * eta
    g_cur = coul2 / rb + w2 * rb * rb + lfac / (rb * rb) - 2.0 * eta
    for i in range(i_start, i_stop):
        r_next = r0 + (i + 1) * h
        g_next = (coul2 / r_next + w2 * r_next * r_next
                  + lfac / (r_next * r_next) - 2.0 * eta)
        u[i + 1] = (2.0 * u[i] * (1.0 + 5.0 * h2 * g_cur / 12.0)
                    - u[i - 1] * (1.0 - h2 * g_prev / 12.0)) / (1.0 - h2 * g_next / 12.0)
        if not math.isfinite(u[i + 1]):
            return False
        if abs(u[i + 1]) > 1e150:
            for j in range(i + 2):
                u[j] *= 1e-150
        g_prev = g_cur
        g_cur = g_next
    return True


@njit(cache=True)
def fill_inward(eta, omega, l, coul2, r0, h, n, i_stop, u):
    """March the decaying solution inward, filling u[i_stop..n]."""
    w2 = omega * omega
    lfac = l * l - 0.25
    h2 = h * h

    rn = r0 + n * h
    rn1 = rn - h
    g_prev = coul2 / rn + w2 * rn * rn + lfac / (rn * rn) - 2.0 * eta
    g_cur = coul2 / rn1 + w2 * rn1 * rn1 + lfac / (rn1 * rn1) - 2.0 * eta
    step = h * math.sqrt(max(g_cur, 0.0))
    u[n] = 1e-200
    u[n - 1] = 1e-200 * math.exp(min(step, 600.0))
    for i in range(n - 1, i_stop, -1):
        r_next = r0 + (i - 1) * h
        g_next = (coul2 / r_next + w2 * r_next * r_next
                  + lfac / (r_next * r_next) - 2.0 * eta)
        u[i - 1] = (2.0 * u[i] * (1.0 + 5.0 * h2 * g_cur / 12.0)
                    - u[i + 1] * (1.0 - h2 * g_prev / 12.0)) / (1.0 - h2 * g_next / 12.0)
        if not math.isfinite(u[i - 1]):
            return False
        if abs(u[i - 1]) > 1e150:
            for j in range(i - 1, n + 1):
                u[j] *= 1e-150
        g_prev = g_cur
        g_cur = g_next
    return True
