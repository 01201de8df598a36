"""Error-function family: erf, erfc and the scaled erfcx.

Everything is built on one frozen Chebyshev expansion of erfcx on [0, inf)
plus ``exp``; no libm erf is used, so results are reproducible wherever IEEE
``exp`` is. All functions are numba-compiled and callable from Python or from
other compiled kernels.
"""

import math

import numpy as np
from numba import njit

from ._erfcx_coeffs import COEFFS, K

_COEFFS = np.array(COEFFS)
_NCOEF = len(COEFFS)
_INV_SQRT_PI = 0.5641895835477562869480795
_TWO_OVER_SQRT_PI = 1.1283791670955125738961589
_ASYMPTOTIC_FROM = 1.0e6
# erfcx(z) for z below this overflows a double (2 * exp(z*z) > DBL_MAX).
ERFCX_OVERFLOW_BELOW = -26.628


@njit(cache=True)
def _cheb_erfcx(x):
    # x >= 0, x < _ASYMPTOTIC_FROM
    y = (x - K) / (x + K)
    y2 = 2.0 * y
    b1 = 0.0
    b2 = 0.0
    for j in range(_NCOEF - 1, 0, -1):
        b0 = y2 * b1 - b2 + _COEFFS[j]
        b2 = b1
        b1 = b0
    return (y * b1 - b2 + _COEFFS[0]) / (1.0 + 2.0 * x)


@njit(cache=True)
def exp_neg_sq(z):
    """exp(-z*z) without the rounding error of forming z*z."""
    z = abs(z)
    if z > 27.3:
        return 0.0
    zs = math.floor(z * 16.0) / 16.0
    d = (z - zs) * (z + zs)
    return math.exp(-zs * zs) * math.exp(-d)


@njit(cache=True)
def exp_sq(z):
    """exp(z*z), same splitting as :func:`exp_neg_sq`."""
    z = abs(z)
    if z > 26.7:
        return math.inf
    zs = math.floor(z * 16.0) / 16.0
    d = (z - zs) * (z + zs)
    return math.exp(zs * zs) * math.exp(d)


@njit(cache=True)
def _erf_series(z):
    # Maclaurin series for |z| < 0.5; 16 terms reach below 1e-20 at |z| = 0.5
    z2 = z * z
    term = z
    total = z
    for n in range(1, 17):
        term *= -z2 / n
        total += term / (2 * n + 1)
    return _TWO_OVER_SQRT_PI * total


@njit(cache=True)
def erfcx(z):
    """Scaled complementary error function exp(z**2) * erfc(z).

    Finite for every z >= ERFCX_OVERFLOW_BELOW; below that the true value
    exceeds the double range and ``inf`` is returned.
    """
    if abs(z) < 0.5:
        return exp_sq(z) * (1.0 - _erf_series(z))
    if z >= 0.0:
        if z < _ASYMPTOTIC_FROM:
            return _cheb_erfcx(z)
        r = 1.0 / (z * z)
        return _INV_SQRT_PI / z * (1.0 - 0.5 * r + 0.75 * r * r)
    if z < ERFCX_OVERFLOW_BELOW:
        return math.inf
    return 2.0 * exp_sq(z) - erfcx(-z)


@njit(cache=True)
def erfc(z):
    """Complementary error function 1 - erf(z)."""
    if abs(z) < 0.5:
        return 1.0 - _erf_series(z)
    if z >= 0.0:
        if z > 27.3:
            return 0.0
        return _cheb_erfcx(z) * exp_neg_sq(z)
    return 2.0 - erfc(-z)


@njit(cache=True)
def erf(z):
    """Error function (2/sqrt(pi)) * integral_0^z exp(-y^2) dy."""
    a = abs(z)
    if a < 0.5:
        return _erf_series(z)
    v = 1.0 - erfc(a)
    return v if z > 0.0 else -v
