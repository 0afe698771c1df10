"""Log-domain Poisson probabilities that stay accurate at large means.

``-lam + n log(lam) - lgamma(n+1)`` loses ~1e-10 absolute accuracy near
``n ~ lam ~ 1e5`` through cancellation. The saddle-point form

    log p(n; lam) = -log(2 pi n)/2 - stirlerr(n) - bd0(n, lam)

keeps every term small (C. Loader, "Fast and accurate computation of binomial
probabilities", 2000).
"""

import math

import numpy as np
from scipy.special import gammaln

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_STIRLING = (1.0 / 12, 1.0 / 360, 1.0 / 1260, 1.0 / 1680, 1.0 / 1188)


def stirlerr(n):
    """``lgamma(n+1) - (n + 1/2) log n + n - log(2 pi)/2`` for ``n >= 1``."""
    n = np.asarray(n, dtype=np.float64)
    out = np.empty_like(n)
    small = n <= 15
    ns = n[small]
    out[small] = gammaln(ns + 1) - (ns + 0.5) * np.log(ns) + ns - _LOG_SQRT_2PI
    nl = n[~small]
    nn = nl * nl
    s0, s1, s2, s3, s4 = _STIRLING
    out[~small] = (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / nl
    return out


def bd0(x, lam):
    """Deviance term ``x log(x/lam) + lam - x`` without cancellation near ``x = lam``."""
    x = np.asarray(x, dtype=np.float64)
    lam = np.broadcast_to(np.asarray(lam, dtype=np.float64), x.shape)
    out = np.empty_like(x)
    near = np.abs(x - lam) < 0.1 * (x + lam)
    far = ~near
    out[far] = x[far] * np.log(x[far] / lam[far]) + lam[far] - x[far]
    xn, ln = x[near], lam[near]
    v = (xn - ln) / (xn + ln)
    s = (xn - ln) * v
    ej = 2.0 * xn * v
    v2 = v * v
    active = np.ones(xn.shape, dtype=bool)
    j = 1
    while np.any(active) and j < 1000:
        ej = ej * v2
        s1 = s + ej / (2 * j + 1)
        active = s1 != s
        s = s1
        j += 1
    out[near] = s
    return out


def poisson_logpmf(n, lam: float):
    """``log(e^{-lam} lam^n / n!)`` elementwise over integer ``n >= 0``."""
    n = np.asarray(n, dtype=np.float64)
    out = np.empty_like(n)
    if lam == 0:
        out[:] = np.where(n == 0, 0.0, -np.inf)
        return out
    zero = n == 0
    out[zero] = -lam
    nz = n[~zero]
    out[~zero] = -np.log(2.0 * math.pi * nz) / 2.0 - stirlerr(nz) - bd0(nz, lam)
    return out
