"""Splitting of the first excited oscillator state, re-formed at t = tau.

psi is proportional to a(x) (t(x-t) + i(tau-t)x) + b(x) (t(x+t) + i(tau-t)x)
with a = exp(-(x-t)^2/2), b = exp(-(x+t)^2/2). Only the density is given in
closed form; the guidance velocity is the unique odd field satisfying
continuity,

    v(x, t) = -(1/rho) * integral_0^x d_t rho(y, t) dy.

Two evaluations of that integral are provided: adaptive quadrature
(``es_velocity``) and an exact reduction to Gaussian moments
(``velocity_k``), which is what the integrator calls by default.
"""

import math

from numba import njit

from ..errors import NodeSingularity, NonConvergence
from ..numerics.quadrature import OK, QuadratureSpec, adaptive_gk
from ..numerics.special import erf, erfc
from .base import WaveModel

SQRT_PI = math.sqrt(math.pi)
DEFAULT_SPLIT_TIME = 10.0
NODE_GUARD = 1e-300
# below this |x| the moment form loses digits to cancellation; integrate instead
SMALL_X = 0.5


@njit(cache=True)
def _sc(x, t):
    """exp(-(x^2+t^2)/2) times (sinh(xt), cosh(xt)), free of overflow and cancellation."""
    if abs(x * t) < 1.0:
        e = math.exp(-0.5 * (x * x + t * t))
        return e * math.sinh(x * t), e * math.cosh(x * t)
    a = math.exp(-0.5 * (x - t) ** 2)
    b = math.exp(-0.5 * (x + t) ** 2)
    return 0.5 * (a - b), 0.5 * (a + b)


@njit(cache=True)
def _abs2(x, t, tau):
    """|bracket|^2 (unnormalised density) as a sum of squares, exact zero at the node."""
    sh, ch = _sc(x, t)
    re = t * x * ch - t * t * sh
    im = (tau - t) * x * ch
    return 4.0 * (re * re + im * im)


@njit(cache=True)
def _abs2_dt(x, t, tau):
    s = tau - t
    sh, ch = _sc(x, t)
    dsh = x * ch - t * sh
    dch = x * sh - t * ch
    re = t * x * ch - t * t * sh
    im = s * x * ch
    dre = x * ch + t * x * dch - 2.0 * t * sh - t * t * dsh
    dim = x * (s * dch - ch)
    return 8.0 * (re * dre + im * dim)


@njit(cache=True)
def norm_k(t, tau):
    """Integral of |bracket|^2 over the real line."""
    s = tau - t
    return SQRT_PI * (t * t + s * s * (1.0 + 2.0 * t * t)
                      + math.exp(-t * t) * (t * t + s * s - 2.0 * t ** 4))


@njit(cache=True)
def norm_dt_k(t, tau):
    s = tau - t
    et = math.exp(-t * t)
    inner = t * t + s * s - 2.0 * t ** 4
    return SQRT_PI * (2.0 * t - 2.0 * s * (1.0 + 2.0 * t * t) + 4.0 * t * s * s
                      + et * (-2.0 * t * inner + 2.0 * t - 2.0 * s - 8.0 * t ** 3))


@njit(cache=True)
def density_k(x, t, tau):
    return _abs2(x, t, tau) / norm_k(t, tau)


@njit(cache=True)
def density_dt_k(x, t, tau):
    z = norm_k(t, tau)
    return _abs2_dt(x, t, tau) / z - _abs2(x, t, tau) * norm_dt_k(t, tau) / (z * z)


@njit(cache=True)
def _density_dt_integrand(y, p):
    return density_dt_k(y, p[0], p[1])


# ---- exact Gaussian-moment integrals -------------------------------------

@njit(cache=True)
def _gpow(z, k):
    # z^k exp(-z^2), zero at infinite z
    if math.isinf(z):
        return 0.0
    return z ** k * math.exp(-z * z)


@njit(cache=True)
def _m0(lo, hi):
    """integral_lo^hi exp(-u^2) du, without cancellation in either tail."""
    if lo >= 0.0:
        return 0.5 * SQRT_PI * (erfc(lo) - erfc(hi))
    if hi <= 0.0:
        return 0.5 * SQRT_PI * (erfc(-hi) - erfc(-lo))
    return 0.5 * SQRT_PI * (erf(hi) - erf(lo))


@njit(cache=True)
def _gauss_poly(c0, c1, c2, c3, center, lo, hi):
    """integral_lo^hi (c0 + c1 y + c2 y^2 + c3 y^3) exp(-(y - center)^2) dy."""
    m = center
    # shift to u = y - center
    d0 = c0 + c1 * m + c2 * m * m + c3 * m ** 3
    d1 = c1 + 2.0 * c2 * m + 3.0 * c3 * m * m
    d2 = c2 + 3.0 * c3 * m
    d3 = c3
    ul = lo - m
    uh = hi - m
    m0 = _m0(ul, uh)
    m1 = 0.5 * (_gpow(ul, 0) - _gpow(uh, 0))
    m2 = 0.5 * (_gpow(ul, 1) - _gpow(uh, 1)) + 0.5 * m0
    m3 = 0.5 * (_gpow(ul, 2) - _gpow(uh, 2)) + m1
    return d0 * m0 + d1 * m1 + d2 * m2 + d3 * m3


@njit(cache=True)
def _moment_parts(x, t, tau, tail):
    """(N, N_t): unnormalised mass and its t-derivative on [0, x] or [x, inf).

    Uses the x -> -x symmetry to fold the b-packet onto the a-packet.
    """
    s = tau - t
    q = t * t + s * s
    et = math.exp(-t * t)
    p1 = (t ** 4, -2.0 * t ** 3, q, 0.0)
    qa = (-2.0 * t ** 5 + 4.0 * t ** 3, 6.0 * t ** 4 - 6.0 * t * t,
          -6.0 * t ** 3 - 2.0 * t * s * s + 2.0 * t - 2.0 * s, 2.0 * q)
    p3 = (-t ** 4, 0.0, q, 0.0)
    qc = (2.0 * t ** 5 - 4.0 * t ** 3, 0.0, -2.0 * t ** 3 - 2.0 * t * s * s + 2.0 * t - 2.0 * s,
          0.0)
    if tail:
        inf = math.inf
        n = (_gauss_poly(p1[0], p1[1], p1[2], p1[3], t, x, inf)
             + _gauss_poly(p1[0], p1[1], p1[2], p1[3], t, -inf, -x)
             + 2.0 * et * _gauss_poly(p3[0], p3[1], p3[2], p3[3], 0.0, x, inf))
        n_t = (_gauss_poly(qa[0], qa[1], qa[2], qa[3], t, x, inf)
               + _gauss_poly(qa[0], qa[1], qa[2], qa[3], t, -inf, -x)
               + 2.0 * et * _gauss_poly(qc[0], qc[1], qc[2], qc[3], 0.0, x, inf))
    else:
        n = (_gauss_poly(p1[0], p1[1], p1[2], p1[3], t, -x, x)
             + 2.0 * et * _gauss_poly(p3[0], p3[1], p3[2], p3[3], 0.0, 0.0, x))
        n_t = (_gauss_poly(qa[0], qa[1], qa[2], qa[3], t, -x, x)
               + 2.0 * et * _gauss_poly(qc[0], qc[1], qc[2], qc[3], 0.0, 0.0, x))
    return n, n_t


@njit(cache=True)
def cumulative_k(x, t, tau):
    """Integral of the density from 0 to x."""
    a = abs(x)
    n, _ = _moment_parts(a, t, tau, a > t)
    c = n / norm_k(t, tau)
    if a > t:
        c = 0.5 - c
    return c if x >= 0.0 else -c


@njit
def velocity_k(x, t, args):
    """Continuity velocity via Gaussian moments; NaN at a density node."""
    tau = args[0]
    if x == 0.0 or t == 0.0:
        return 0.0
    a = abs(x)
    rho_u = _abs2(a, t, tau)
    if not rho_u / norm_k(t, tau) >= NODE_GUARD:
        return math.nan
    if a < SMALL_X:
        z = norm_k(t, tau)
        flux, err, status = adaptive_gk(_density_dt_integrand, (t, tau), 0.0, a, 0.0, 1e-14, 100)
        v = -flux * z / rho_u
    else:
        tail = a > t
        n, n_t = _moment_parts(a, t, tau, tail)
        r = norm_dt_k(t, tau) / norm_k(t, tau)
        v = (n_t - n * r) / rho_u
        if not tail:
            v = -v
    return v if x > 0.0 else -v


@njit
def velocity_quad_k(x, t, args):
    """Continuity velocity by adaptive quadrature of d_t rho; NaN on failure."""
    tau = args[0]
    rel = args[1]
    if x == 0.0 or t == 0.0:
        return 0.0
    a = abs(x)
    rho = density_k(a, t, tau)
    if not rho >= NODE_GUARD:
        return math.nan
    p = (t, tau)
    if a <= max(t, 1.0):
        flux, err, status = adaptive_gk(_density_dt_integrand, p, 0.0, a, rel * rho, rel, 400)
        v = -flux / rho
    else:
        # zero total flux through x = 0 lets the outer side be used instead
        top = a + 15.0
        flux, err, status = adaptive_gk(_density_dt_integrand, p, a, top, rel * rho, rel, 400)
        v = flux / rho
    if status != OK:
        return math.nan
    return v if x > 0.0 else -v


def _check_t(t, tau):
    if not 0.0 <= t <= tau:
        raise ValueError(f"t={t!r} outside [0, {tau}]")


class ExcitedStateSplitModel(WaveModel):
    """First excited oscillator state split into two packets re-formed at ``split_time``.

    ``velocity_method`` selects the field used by the integrator: ``"moments"``
    (exact Gaussian-moment reduction, default) or ``"quadrature"``.
    """

    name = "excited"
    field_error = NodeSingularity

    def __init__(self, split_time=DEFAULT_SPLIT_TIME, velocity_method="moments",
                 quadrature=QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12)):
        if not split_time > 0:
            raise ValueError("split_time must be positive")
        if velocity_method not in ("moments", "quadrature"):
            raise ValueError("velocity_method must be 'moments' or 'quadrature'")
        self.split_time = float(split_time)
        self.default_horizon = self.split_time
        self.velocity_method = velocity_method
        self.quadrature = quadrature
        if velocity_method == "moments":
            self.velocity_kernel = velocity_k
            self.kernel_args = (self.split_time,)
        else:
            self.velocity_kernel = velocity_quad_k
            self.kernel_args = (self.split_time, quadrature.rel_tol)

    def __repr__(self):
        return (f"ExcitedStateSplitModel(split_time={self.split_time}, "
                f"velocity_method={self.velocity_method!r})")

    def density(self, x, t):
        return es_density(x, t, self.split_time)

    def density_dt(self, x, t):
        return es_density_dt(x, t, self.split_time)

    def velocity(self, x, t):
        if self.velocity_method == "quadrature":
            return es_velocity(x, t, self.quadrature, self.split_time)
        return es_velocity_moments(x, t, self.split_time)

    def cumulative(self, x, t):
        return float(cumulative_k(float(x), float(t), self.split_time))

    def reference_density(self, x):
        return 2.0 * x * x * math.exp(-x * x) / SQRT_PI

    def reference_cdf(self, x):
        x = float(x)
        return 0.5 * (1.0 + float(erf(x))) - x * math.exp(-x * x) / SQRT_PI

    def in_domain(self, x, t):
        return 0.0 <= t <= self.split_time


def es_density(x, t, tau=DEFAULT_SPLIT_TIME):
    """Normalised |psi(x, t)|^2."""
    _check_t(t, tau)
    return density_k(float(x), float(t), float(tau))


def es_density_dt(x, t, tau=DEFAULT_SPLIT_TIME):
    """Analytic d_t |psi(x, t)|^2."""
    _check_t(t, tau)
    return density_dt_k(float(x), float(t), float(tau))


def _node_check(x, t, tau):
    rho = density_k(x, t, tau)
    if x != 0.0 and t != 0.0 and not rho >= NODE_GUARD:
        raise NodeSingularity(f"density {rho:.3g} at x={x!r}, t={t!r} is a node")


def es_velocity(x, t, spec=QuadratureSpec(), tau=DEFAULT_SPLIT_TIME):
    """Continuity velocity -(1/rho) integral_0^x d_t rho dy by adaptive quadrature.

    ``spec.rel_tol`` bounds the relative error of the flux integral; the
    absolute target is scaled by rho so it applies to the velocity itself.
    """
    x = float(x)
    t = float(t)
    _check_t(t, tau)
    _node_check(x, t, tau)
    v = velocity_quad_k(x, t, (float(tau), spec.rel_tol))
    if math.isnan(v):
        raise NonConvergence(f"flux quadrature failed at x={x!r}, t={t!r}")
    return v


def es_velocity_moments(x, t, tau=DEFAULT_SPLIT_TIME):
    x = float(x)
    t = float(t)
    _check_t(t, tau)
    _node_check(x, t, tau)
    return velocity_k(x, t, (float(tau),))


def es_amplitude(x, t, tau=DEFAULT_SPLIT_TIME):
    return math.sqrt(es_density(x, t, tau))

