"""Globally adaptive Gauss-Kronrod (7/15) quadrature with interval bisection."""

from dataclasses import dataclass

import numpy as np
from numba import njit
from numba.extending import is_jitted

from ..errors import NonConvergence

# Kronrod 15-point abscissae (descending) and weights; Gauss 7-point weights
# for the odd-indexed abscissae. Values from QUADPACK qk15.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_EPS = np.finfo(float).eps

OK = 0
NONCONVERGED = 1


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


def _panel(f, args, a, b):
    """One Gauss-Kronrod panel: (kronrod value, |K - G|, integral of |f|)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c, args)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    for j in range(7):
        dx = h * _XGK[j]
        f1 = f(c - dx, args)
        f2 = f(c + dx, args)
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    return res_k * h, abs((res_k - res_g) * h), res_abs * abs(h)


def _adaptive(panel, f, args, a, b, abs_tol, rel_tol, limit):
    if a == b:
        return 0.0, 0.0, OK
    lo = np.empty(limit)
    hi = np.empty(limit)
    val = np.empty(limit)
    err = np.empty(limit)
    mag = np.empty(limit)
    lo[0] = a
    hi[0] = b
    val[0], err[0], mag[0] = panel(f, args, a, b)
    n = 1
    while True:
        total = 0.0
        total_err = 0.0
        total_mag = 0.0
        worst = 0
        for i in range(n):
            total += val[i]
            total_err += err[i]
            total_mag += mag[i]
            if err[i] > err[worst]:
                worst = i
        target = max(abs_tol, rel_tol * abs(total), 50.0 * _EPS * total_mag)
        if total_err <= target:
            return total, total_err, OK
        if n >= limit:
            return total, total_err, NONCONVERGED
        l = lo[worst]
        r = hi[worst]
        m = 0.5 * (l + r)
        if m == l or m == r:
            return total, total_err, NONCONVERGED
        val[worst], err[worst], mag[worst] = panel(f, args, l, m)
        hi[worst] = m
        val[n], err[n], mag[n] = panel(f, args, m, r)
        lo[n] = m
        hi[n] = r
        n += 1


gk15 = njit(_panel)
_adaptive_jit = njit(_adaptive)


@njit
def adaptive_gk(f, args, a, b, abs_tol, rel_tol, limit):
    """Compiled core: integrate f(y, args) over [a, b] -> (value, err, status).

    Returns a status code instead of raising so it can run inside nopython code.
    """
    return _adaptive_jit(gk15, f, args, a, b, abs_tol, rel_tol, limit)


def _call_plain(y, f):
    return f(y)


_call_plain_jit = njit(_call_plain)


def integrate(f, a, b, spec=QuadratureSpec()):
    """Adaptive quadrature of a one-argument function over [a, b].

    Returns ``(value, err_estimate)``. Compiled (numba) integrands run through
    the compiled core; plain Python callables run the same algorithm in
    Python. Raises :class:`NonConvergence` when the subdivision budget is spent.
    """
    a = float(a)
    b = float(b)
    if is_jitted(f):
        value, err, status = adaptive_gk(_call_plain_jit, f, a, b, spec.abs_tol, spec.rel_tol,
                                         spec.max_subdivisions)
    else:
        value, err, status = _adaptive(_panel, _call_plain, f, a, b, spec.abs_tol, spec.rel_tol,
                                          spec.max_subdivisions)
    if status != OK:
        raise NonConvergence(
            f"no convergence on [{a}, {b}] after {spec.max_subdivisions} subdivisions "
            f"(estimate {value!r} +/- {err:.3g})")
    return float(value), float(err)
