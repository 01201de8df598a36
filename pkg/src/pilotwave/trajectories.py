"""Single trajectories and trajectory fans of a guided-wave model."""

from dataclasses import dataclass, field

import numpy as np

from .errors import PilotWaveError, StepFailure
from .numerics.ode import NONFINITE, OK, STEP_UNDERFLOW, OdeSpec, Trajectory, dopri, sample_times

DEFAULT_SAMPLES = 201


@dataclass(frozen=True)
class TrajectoryRequest:
    model: object
    x0: float
    t_span: tuple
    ode: OdeSpec = field(default_factory=OdeSpec)
    sample_count: int = DEFAULT_SAMPLES

    def __post_init__(self):
        t0, t1 = self.t_span
        if not t1 > t0:
            raise ValueError("t_span must be increasing")
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")


@dataclass(frozen=True)
class FailedTrajectory:
    """Placeholder in a fan for an initial position whose integration failed."""

    x0: float
    error: PilotWaveError


def integrate_model(model, x0, t0, t1, ode, t_out):
    """Run the compiled integrator on ``model``'s velocity kernel.

    Returns positions at ``t_out``; raises the model's field error when the
    velocity turns non-finite (certified-domain exit or density node).
    """
    x_out, _, _, status, t_at, x_at = dopri(model.velocity_kernel, model.kernel_args,
                                            float(x0), float(t0), float(t1), t_out, False,
                                            ode.abs_tol, ode.rel_tol, ode.initial_step,
                                            ode.max_step)
    if status == OK:
        return x_out
    if status == STEP_UNDERFLOW:
        raise StepFailure(f"step size underflow at t={t_at!r}, x={x_at!r} (x0={x0!r})")
    if status == NONFINITE:
        # let the model name the reason (domain exit, node) at the last good point
        model.velocity(x_at, t_at)
        raise getattr(model, "field_error", StepFailure)(
            f"velocity field non-finite next to t={t_at!r}, x={x_at!r} (x0={x0!r})")
    raise StepFailure(f"integrator status {status}")


def run_trajectory(req):
    """Solve the guidance equation for one initial position."""
    t0, t1 = (float(v) for v in req.t_span)
    t_out = sample_times(t0, t1, req.sample_count)
    x = integrate_model(req.model, req.x0, t0, t1, req.ode, t_out)
    return Trajectory(t_out, np.asarray(x, dtype=float), dense=req.sample_count > 2)


def trajectory_fan(model, x0_list, t_span, ode=OdeSpec(), sample_count=DEFAULT_SAMPLES):
    """One trajectory per initial position, in input order.

    A failing entry becomes a :class:`FailedTrajectory`; the rest are unaffected.
    """
    fan = []
    for x0 in x0_list:
        try:
            fan.append(run_trajectory(TrajectoryRequest(model, float(x0), tuple(t_span), ode,
                                                        sample_count)))
        except PilotWaveError as exc:
            fan.append(FailedTrajectory(float(x0), exc))
    return fan
