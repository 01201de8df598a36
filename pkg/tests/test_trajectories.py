import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pilotwave.errors import DomainError
from pilotwave.numerics import OdeSpec
from pilotwave.trajectories import (FailedTrajectory, TrajectoryRequest, run_trajectory,
                                    trajectory_fan)


def test_rest_at_origin(ground):
    tr = run_trajectory(TrajectoryRequest(ground, 0.0, (0.0, 20.0)))
    assert np.all(tr.x == 0.0)
    assert len(tr.t) == 201 and tr.t[-1] == 20.0


def test_unit_final_speed(ground):
    tr = run_trajectory(TrajectoryRequest(ground, 1.0, (0.0, 20.0)))
    assert abs(ground.velocity(tr.final, 20.0) - 1.0) <= 0.01
    speed = (tr.x[-1] - tr.x[-2]) / (tr.t[-1] - tr.t[-2])
    assert abs(speed - 1.0) <= 0.01


@pytest.mark.parametrize("a", [0.3, 1.0, 2.2])
def test_mirror(ground, a):
    p = run_trajectory(TrajectoryRequest(ground, a, (0.0, 20.0)))
    m = run_trajectory(TrajectoryRequest(ground, -a, (0.0, 20.0)))
    assert np.max(np.abs(p.x + m.x)) <= 1e-9


def test_fan_examples(ground):
    x0s = [-2, -1.5, -1, -0.5, -0.25, 0.25, 0.5, 1, 1.5, 2]
    fan = trajectory_fan(ground, x0s, (0.0, 20.0))
    assert len(fan) == 10
    for x0, tr in zip(x0s, fan):
        assert tr.x[0] == x0
        assert np.sign(tr.final) == np.sign(x0)
    assert trajectory_fan(ground, [], (0.0, 20.0)) == []


def _assert_non_crossing(fan):
    xs = np.array([tr.x for tr in fan])
    assert np.all(np.diff(xs, axis=0) > 0)


def test_non_crossing_ground(ground):
    x0s = np.linspace(-3.0, 3.0, 41)
    _assert_non_crossing(trajectory_fan(ground, x0s, (0.0, 20.0)))


def test_non_crossing_excited(excited):
    x0s = [v for v in np.linspace(-3.0, 3.0, 40)]
    fan = trajectory_fan(excited, x0s, (0.0, 10.0))
    _assert_non_crossing(fan)
    # two branches toward the receding packets at -10 and +10
    for x0, tr in zip(x0s, fan):
        assert abs(tr.final - 10.0 * np.sign(x0)) < 4.0


@settings(max_examples=15, deadline=None)
@given(st.lists(st.floats(-4.0, 4.0), min_size=2, max_size=6, unique=True))
def test_non_crossing_property(x0s):
    from pilotwave.models import GroundStateSplitModel
    x0s = sorted(x0s)
    if min(np.diff(x0s)) < 1e-6:
        return
    fan = trajectory_fan(GroundStateSplitModel(), x0s, (0.0, 20.0), sample_count=41)
    _assert_non_crossing(fan)


def test_fan_isolates_failures(ground):
    # the ground field is certified for |x| <= t + 10 only
    fan = trajectory_fan(ground, [1.0, 12.0, -1.0], (0.0, 5.0))
    assert isinstance(fan[1], FailedTrajectory)
    assert isinstance(fan[1].error, DomainError) and fan[1].x0 == 12.0
    assert fan[0].final == pytest.approx(-fan[2].final, abs=1e-12)


def test_tolerance_robustness(ground):
    loose = OdeSpec(1e-8, 1e-8)
    tight = OdeSpec(1e-10, 1e-10)
    for x0 in (0.4, 1.0, -2.0):
        a = run_trajectory(TrajectoryRequest(ground, x0, (0.0, 20.0), loose, 2)).final
        b = run_trajectory(TrajectoryRequest(ground, x0, (0.0, 20.0), tight, 2)).final
        assert abs(a - b) < 10 * 1e-8 * max(1.0, abs(b))


def test_deterministic(excited):
    req = TrajectoryRequest(excited, 0.7, (0.0, 10.0))
    assert np.array_equal(run_trajectory(req).x, run_trajectory(req).x)


def test_request_invariants(ground):
    with pytest.raises(ValueError):
        TrajectoryRequest(ground, 0.0, (1.0, 1.0))
    with pytest.raises(ValueError):
        TrajectoryRequest(ground, 0.0, (0.0, 1.0), sample_count=1)
