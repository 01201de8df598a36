"""Splitting of the harmonic-oscillator ground state into two receding packets.

Amplitude R = (4/pi)^(1/4) exp(-x^2/2) cosh(xt) / sqrt(exp(t^2) + 1), phase
S = f - t/2. Every quantity here is rewritten so that no factor like
exp(t^2), exp((x+t)^2) or cosh(xt) is ever formed; see ``_split_terms``.
"""

import math

from numba import njit

from ..errors import DomainError, NonConvergence
from ..numerics.quadrature import OK, QuadratureSpec, adaptive_gk
from ..numerics.special import erf, erfcx
from .base import WaveModel

SQRT_PI = math.sqrt(math.pi)
T_MAX = 25.0
X_MARGIN = 10.0
_NO_ARGS = (0.0,)


@njit(cache=True)
def _in_domain(x, t):
    return 0.0 <= t <= T_MAX and abs(x) <= t + X_MARGIN


@njit(cache=True)
def density_k(x, t):
    et = math.exp(-t * t)
    g = math.exp(-(x - t) ** 2) + math.exp(-(x + t) ** 2) + 2.0 * math.exp(-x * x) * et
    return g / (2.0 * SQRT_PI * (1.0 + et))


@njit(cache=True)
def density_dt_k(x, t):
    et = math.exp(-t * t)
    em = math.exp(-(x - t) ** 2)
    ep = math.exp(-(x + t) ** 2)
    ex = math.exp(-x * x) * et
    g = em + ep + 2.0 * ex
    g_t = 2.0 * (x - t) * em - 2.0 * (x + t) * ep - 4.0 * t * ex
    d = 1.0 + et
    return (g_t + g * 2.0 * t * et / d) / (2.0 * SQRT_PI * d)


@njit(cache=True)
def cumulative_k(x, t):
    """Integral of the density from 0 to x."""
    et = math.exp(-t * t)
    return (erf(x - t) + erf(x + t) + 2.0 * et * erf(x)) / (4.0 * (1.0 + et))


@njit(cache=True)
def _split_terms(x, t):
    """(tanh(xt), w / t) for x >= 0, where w = v - tanh(xt).

    w / t = sqrt(pi) E exp(x^2) / ((1 + e^{-t^2}) 4 cosh^2(xt)) with
    E = erf(t-x) + 2 erf(x) - erf(t+x), regrouped through erfcx into terms that
    stay bounded for 0 <= x <= t + 10.
    """
    et = math.exp(-t * t)
    if x >= t:
        term1 = erfcx(x - t) * et
    else:
        term1 = 2.0 * math.exp(x * (x - 2.0 * t)) - erfcx(t - x) * et
    e2 = math.exp(-2.0 * x * t)
    term2 = -2.0 * erfcx(x) * e2
    term3 = erfcx(x + t) * e2 * e2 * et
    w_over_t = SQRT_PI * (term1 + term2 + term3) / ((1.0 + et) * (1.0 + e2) ** 2)
    return (1.0 - e2) / (1.0 + e2), w_over_t


@njit(cache=True)
def velocity_k(x, t, args):
    """Guidance velocity; NaN outside the certified domain."""
    if not _in_domain(x, t):
        return math.nan
    if x == 0.0 or t == 0.0:
        return 0.0
    a = abs(x)
    th, w_over_t = _split_terms(a, t)
    v = th + t * w_over_t
    return v if x > 0.0 else -v


@njit(cache=True)
def velocity_dt_k(x, t, args):
    """Partial time derivative of the guidance velocity."""
    if not _in_domain(x, t):
        return math.nan
    if x == 0.0:
        return 0.0
    a = abs(x)
    th, w_over_t = _split_terms(a, t)
    e2 = math.exp(-2.0 * a * t)
    sech2 = 4.0 * e2 / (1.0 + e2) ** 2
    et = math.exp(-t * t)
    d = 1.0 + et
    r = (a * sech2 + 2.0 * t * et * th / d
         + w_over_t * (1.0 + 2.0 * t * t * et / d - 2.0 * a * t * th))
    return r if x > 0.0 else -r


def _check(x, t):
    if not (0.0 <= t <= T_MAX and abs(x) <= t + X_MARGIN):
        raise DomainError(
            f"ground-state velocity is certified for 0 <= t <= {T_MAX} and |x| <= t + "
            f"{X_MARGIN}; got x={x!r}, t={t!r}")


def gs_density(x, t):
    """|psi(x, t)|^2 of the splitting ground state."""
    return density_k(float(x), float(t))


def gs_density_dt(x, t):
    return density_dt_k(float(x), float(t))


def gs_cumulative(x, t):
    return cumulative_k(float(x), float(t))


def gs_velocity(x, t):
    """Closed-form guidance velocity d_x S."""
    x = float(x)
    t = float(t)
    _check(x, t)
    return velocity_k(x, t, _NO_ARGS)


def gs_velocity_dt(x, t):
    x = float(x)
    t = float(t)
    _check(x, t)
    return velocity_dt_k(x, t, _NO_ARGS)


@njit(cache=True)
def _v_integrand(y, t):
    return velocity_k(y, t, _NO_ARGS)


@njit(cache=True)
def _vt_integrand(y, t):
    return velocity_dt_k(y, t, _NO_ARGS)


def _x_integral(integrand, x, t, spec):
    x = float(x)
    t = float(t)
    _check(x, t)
    value, err, status = adaptive_gk(integrand, t, 0.0, x, spec.abs_tol, spec.rel_tol,
                                     spec.max_subdivisions)
    if status != OK:
        raise NonConvergence(f"phase integral did not converge at x={x!r}, t={t!r}")
    return value


def gs_phase_f(x, t, spec=QuadratureSpec()):
    """Phase function f(x, t) = integral_0^x v(y, t) dy (the f(0, t) = 0 branch)."""
    return _x_integral(_v_integrand, x, t, spec)


def gs_phase_f_t(x, t, spec=QuadratureSpec()):
    """d_t f, by differentiating under the integral sign."""
    return _x_integral(_vt_integrand, x, t, spec)


def gs_potential(x, t, spec=QuadratureSpec()):
    """External potential that drives the splitting."""
    x = float(x)
    t = float(t)
    v = gs_velocity(x, t)
    a = x * t
    return 0.5 * (x * x + t * t) - a * math.tanh(a) - gs_phase_f_t(x, t, spec) - 0.5 * v * v


def gs_amplitude(x, t):
    return math.sqrt(gs_density(x, t))


class GroundStateSplitModel(WaveModel):
    """Ground state of the unit oscillator splitting into two packets at unit speed."""

    name = "ground"
    default_horizon = 20.0
    t_max = T_MAX
    field_error = DomainError
    velocity_kernel = velocity_k
    kernel_args = _NO_ARGS

    def density(self, x, t):
        return gs_density(x, t)

    def density_dt(self, x, t):
        return gs_density_dt(x, t)

    def velocity(self, x, t):
        return gs_velocity(x, t)

    def cumulative(self, x, t):
        return gs_cumulative(x, t)

    def reference_density(self, x):
        return math.exp(-x * x) / SQRT_PI

    def reference_cdf(self, x):
        return 0.5 * (1.0 + float(erf(float(x))))

    def in_domain(self, x, t):
        return bool(_in_domain(float(x), float(t)))
