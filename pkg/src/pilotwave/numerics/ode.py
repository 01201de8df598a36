"""Dormand-Prince 5(4) integrator for scalar ODEs x' = v(x, t).

The same stepping code is compiled with numba for compiled velocity fields
and run as plain Python for ordinary callables, so both paths take identical
steps.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit
from numba.extending import is_jitted

from ..errors import StepFailure

# Butcher tableau, error weights and the dense-output polynomial of the
# Dormand-Prince pair (Hairer's continuous extension, optimal c6).
_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
_E1, _E3, _E4, _E5, _E6, _E7 = (-71 / 57600, 71 / 16695, -71 / 1920, 17253 / 339200,
                                -22 / 525, 1 / 40)
_P = np.array([
    [1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0.0, 127303824393 / 49829197408, -318862633887 / 49829197408,
     701980252875 / 199316789632],
    [0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])

OK = 0
STEP_UNDERFLOW = 1
NONFINITE = 2

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


@dataclass(frozen=True)
class OdeSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    initial_step: float = 1e-2
    max_step: float = 0.1

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "initial_step", "max_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"OdeSpec.{name} must be positive")
        if self.max_step < self.initial_step:
            raise ValueError("OdeSpec.max_step must be >= initial_step")


@dataclass(frozen=True)
class Trajectory:
    """Samples of one solution x(t); ``t`` strictly increasing, endpoints included."""

    t: np.ndarray
    x: np.ndarray
    dense: bool

    def __post_init__(self):
        if len(self.t) < 2 or len(self.t) != len(self.x):
            raise ValueError("a trajectory needs at least its two endpoints")

    @property
    def samples(self):
        return list(zip(self.t.tolist(), self.x.tolist()))

    @property
    def final(self):
        return float(self.x[-1])


def _dense_eval(x_old, h, theta, k1, k2, k3, k4, k5, k6, k7):
    acc = 0.0
    ks = (k1, k2, k3, k4, k5, k6, k7)
    for i in range(7):
        q = theta * (_P[i, 0] + theta * (_P[i, 1] + theta * (_P[i, 2] + theta * _P[i, 3])))
        acc += ks[i] * q
    return x_old + h * acc


def _dopri(dense_eval, v, args, x0, t0, t1, t_out, record_steps, atol, rtol, h0, hmax):
    """Integrate from t0 to t1.

    Fills ``t_out``-aligned positions via the dense interpolant (the last
    entry of t_out must equal t1). With ``record_steps`` every accepted step
    is also returned. Returns (x_out, step_t, step_x, status, t_at, x_at).
    """
    n_out = t_out.shape[0]
    x_out = np.empty(n_out)
    cap = 64 if record_steps else 1
    step_t = np.empty(cap)
    step_x = np.empty(cap)
    n_steps = 0
    if record_steps:
        step_t[0] = t0
        step_x[0] = x0
        n_steps = 1
    j = 0
    while j < n_out and t_out[j] <= t0:
        x_out[j] = x0
        j += 1
    t = t0
    x = x0
    k1 = v(x, t, args)
    if not np.isfinite(k1):
        return x_out, step_t[:n_steps], step_x[:n_steps], NONFINITE, t, x
    h = min(h0, hmax, t1 - t0)
    rejected = False
    while t < t1:
        min_h = 16.0 * np.finfo(np.float64).eps * max(abs(t), 1.0)
        if h < min_h:
            return x_out, step_t[:n_steps], step_x[:n_steps], STEP_UNDERFLOW, t, x
        last = t + h >= t1
        if last:
            h = t1 - t
        k2 = v(x + h * _A21 * k1, t + _C2 * h, args)
        k3 = v(x + h * (_A31 * k1 + _A32 * k2), t + _C3 * h, args)
        k4 = v(x + h * (_A41 * k1 + _A42 * k2 + _A43 * k3), t + _C4 * h, args)
        k5 = v(x + h * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4), t + _C5 * h, args)
        t_new = t1 if last else t + h
        k6 = v(x + h * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5),
               t_new, args)
        x_new = x + h * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
        k7 = v(x_new, t_new, args)
        if not (np.isfinite(k2) and np.isfinite(k3) and np.isfinite(k4)
                and np.isfinite(k5) and np.isfinite(k6) and np.isfinite(k7)):
            return x_out, step_t[:n_steps], step_x[:n_steps], NONFINITE, t, x
        err = h * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
        scale = atol + rtol * max(abs(x), abs(x_new))
        err_norm = abs(err) / scale
        if err_norm <= 1.0:
            while j < n_out and t_out[j] <= t_new:
                if t_out[j] == t_new:
                    x_out[j] = x_new
                else:
                    x_out[j] = dense_eval(x, h, (t_out[j] - t) / h, k1, k2, k3, k4, k5, k6, k7)
                j += 1
            if record_steps:
                if n_steps == step_t.shape[0]:
                    grown_t = np.empty(2 * n_steps)
                    grown_x = np.empty(2 * n_steps)
                    grown_t[:n_steps] = step_t
                    grown_x[:n_steps] = step_x
                    step_t = grown_t
                    step_x = grown_x
                step_t[n_steps] = t_new
                step_x[n_steps] = x_new
                n_steps += 1
            t = t_new
            x = x_new
            k1 = k7
            if err_norm == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = min(_MAX_FACTOR, _SAFETY * err_norm ** -0.2)
            if rejected:
                factor = min(factor, 1.0)
            h = min(h * factor, hmax)
            rejected = False
        else:
            h = h * max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
            rejected = True
    return x_out, step_t[:n_steps], step_x[:n_steps], OK, t, x


_dense_eval_jit = njit(cache=True)(_dense_eval)
_dopri_jit = njit(_dopri)


@njit
def dopri(v, args, x0, t0, t1, t_out, record_steps, atol, rtol, h0, hmax):
    """Compiled core; ``v(x, t, args)`` must itself be numba-compiled."""
    return _dopri_jit(_dense_eval_jit, v, args, x0, t0, t1, t_out, record_steps, atol, rtol,
                      h0, hmax)


def _dopri_py(v, args, x0, t0, t1, t_out, record_steps, atol, rtol, h0, hmax):
    return _dopri(_dense_eval, v, args, x0, t0, t1, t_out, record_steps, atol, rtol, h0, hmax)


def _call2(x, t, f):
    return f(x, t)


_call2_jit = njit(_call2)


def sample_times(t0, t1, sample_count):
    times = np.linspace(t0, t1, sample_count)
    times[-1] = t1
    return times


def solve_ode(v, x0, t0, t1, spec=OdeSpec(), sample_count=None):
    """Solve x' = v(x, t) from x(t0) = x0 up to t1 > t0.

    With ``sample_count=None`` every accepted step is returned (dense); an
    integer returns that many uniformly spaced samples from the integrator's
    own interpolant. The last sample is always exactly at t1.
    Raises :class:`StepFailure` on step-size underflow or a non-finite field.
    """
    x0 = float(x0)
    t0 = float(t0)
    t1 = float(t1)
    if not t1 > t0:
        raise ValueError("solve_ode integrates forward only: need t1 > t0")
    record = sample_count is None
    t_out = np.array([t1]) if record else sample_times(t0, t1, int(sample_count))
    if is_jitted(v):
        core, field = dopri, _call2_jit
    else:
        core, field = _dopri_py, _call2
    x_out, st, sx, status, t_at, x_at = core(field, v, x0, t0, t1, t_out, record, spec.abs_tol,
                                             spec.rel_tol, spec.initial_step, spec.max_step)
    check_status(status, t_at, x_at)
    if record:
        return Trajectory(np.asarray(st, dtype=float), np.asarray(sx, dtype=float), dense=True)
    return Trajectory(t_out, np.asarray(x_out, dtype=float), dense=len(t_out) > 2)


def check_status(status, t_at, x_at):
    if status == STEP_UNDERFLOW:
        raise StepFailure(f"step size underflow at t={t_at!r}, x={x_at!r}")
    if status == NONFINITE:
        raise StepFailure(f"non-finite velocity near t={t_at!r}, x={x_at!r}")
