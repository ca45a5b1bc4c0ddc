"""Regularized lower incomplete gamma function P(a, x).

P(a, x) = gamma(a, x) / Gamma(a) is the CDF of a Gamma(shape=a, rate=1)
variable at x.  Evaluation follows the classic split: a power series for
x < a + 1 and a modified-Lentz continued fraction for the complement
otherwise.  Absolute error is well below 1e-10 over the shapes used here
(verified against quadrature and scipy in the test suite).

log Gamma is a local Lanczos (g=7) evaluation rather than math.lgamma:
CPython and numba lower math.lgamma to different implementations, and a
shared formula keeps the jit and fallback paths bit-identical.
"""

import math

from ._accel import maybe_njit

_MAX_ITER = 20000
_EPS = 1e-16
_TINY = 1e-300

_LANCZOS_G = 7.0
_LANCZOS_C0 = 0.99999999999980993
_LANCZOS_C = (
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.9189385332046727
_LOG_PI = 1.1447298858494002


def _lgamma_core(z):
    # valid for z >= 0.5
    z -= 1.0
    acc = _LANCZOS_C0
    for i in range(8):
        acc += _LANCZOS_C[i] / (z + i + 1.0)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


lgamma_core = maybe_njit(_lgamma_core)


def _lgamma(z):
    if z < 0.5:
        # reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return _LOG_PI - math.log(math.sin(math.pi * z)) - lgamma_core(1.0 - z)
    return lgamma_core(z)


lgamma = maybe_njit(_lgamma)


def _reg_lower_gamma(a, x):
    if x <= 0.0:
        return 0.0
    # log prefactor x^a e^-x / Gamma(a); underflows cleanly to 0.
    lg = a * math.log(x) - x - lgamma(a)
    if lg < -745.0:
        # e^lg underflows; the function value is 0 or 1 depending on side.
        return 0.0 if x < a else 1.0
    pref = math.exp(lg)
    if x < a + 1.0:
        # series: P(a,x) = pref * sum_k x^k / (a (a+1) ... (a+k))
        ap = a
        term = 1.0 / a
        total = term
        for _ in range(_MAX_ITER):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * _EPS:
                break
        p = pref * total
        return 1.0 if p > 1.0 else p
    # continued fraction for Q(a,x), modified Lentz
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    q = pref * h
    p = 1.0 - q
    if p < 0.0:
        return 0.0
    return 1.0 if p > 1.0 else p


reg_lower_gamma = maybe_njit(_reg_lower_gamma)
