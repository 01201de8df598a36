import numpy as np
import pytest

from pilotwave.ensemble import (Outcome, RecurrenceRecord, outcome_sequence, run_chain,
                                step_recurrence)
from pilotwave.errors import DegenerateEquilibrium
from pilotwave.numerics import OdeSpec
from pilotwave.trajectories import TrajectoryRequest, run_trajectory


def test_step_example(ground):
    rec = step_recurrence(ground, 1.0, 20.0)
    final = run_trajectory(TrajectoryRequest(ground, 1.0, (0.0, 20.0), sample_count=2)).final
    assert rec.outcome is Outcome.RIGHT
    assert rec.absolute_final == final
    assert rec.relative_position == final - 20.0


def test_step_mirror(ground):
    a = step_recurrence(ground, 0.6, 20.0)
    b = step_recurrence(ground, -0.6, 20.0)
    assert b.relative_position == pytest.approx(-a.relative_position, abs=1e-9)
    assert a.outcome != b.outcome


def test_degenerate_equilibrium(ground, excited):
    with pytest.raises(DegenerateEquilibrium):
        step_recurrence(ground, 0.0, 20.0)
    with pytest.raises(DegenerateEquilibrium):
        run_chain(excited, 0.0, 10.0, 3)


def test_first_hundred_shape(ground):
    chain = run_chain(ground, 1.0, 20.0, 100)
    x = chain.positions
    assert len(chain) == 100 and not chain.truncated
    assert np.all(np.abs(x) < 5)
    assert np.all((np.abs(chain.finals) > 15) & (np.abs(chain.finals) < 25))
    # seeds far from the centre come back towards it
    far = np.abs(x[:-1]) > 1.2
    assert far.any() and np.all(np.abs(x[1:][far]) < np.abs(x[:-1][far]))
    # seeds very close to the centre are thrown far out
    near = np.abs(x[:-1]) < 0.05
    if near.any():
        assert np.all(np.abs(x[1:][near]) > 0.9)


def test_count_one_is_single_step(ground):
    chain = run_chain(ground, 1.0, 20.0, 1)
    rec = step_recurrence(ground, 1.0, 20.0)
    assert chain.records == [rec]


def test_sensitive_dependence(ground):
    a = run_chain(ground, 1.0, 20.0, 200).positions
    b = run_chain(ground, 1.0 + 1e-9, 20.0, 200).positions
    assert np.max(np.abs(a - b)) > 0.5


def test_mirror_chain(ground, excited):
    for model, horizon in ((ground, 20.0), (excited, 10.0)):
        a = run_chain(model, 0.8, horizon, 40)
        b = run_chain(model, -0.8, horizon, 40)
        # a chaotic map amplifies roundoff asymmetry, so compare the early part
        diff = np.abs(a.positions + b.positions)
        assert diff[0] <= 1e-9
        assert [o.value for o in outcome_sequence(a)[:10]] == [
            ("LEFT" if o is Outcome.RIGHT else "RIGHT") for o in outcome_sequence(b)[:10]]


def test_seed_consistency(ground):
    chain = run_chain(ground, 0.37, 20.0, 30)
    for n in range(29):
        rec = step_recurrence(ground, chain.positions[n], 20.0)
        assert rec.relative_position == chain.positions[n + 1]
        assert rec.absolute_final == chain.finals[n + 1]


def test_deterministic(excited):
    a = run_chain(excited, 1.0, 10.0, 50)
    b = run_chain(excited, 1.0, 10.0, 50)
    assert np.array_equal(a.positions, b.positions)


def test_truncation_recorded(ground):
    # horizon beyond the certified ground field domain fails on the first step
    chain = run_chain(ground, 1.0, 30.0, 5)
    assert len(chain) == 0 and chain.truncated
    assert "DomainError" in chain.truncation


def test_progress_callback(ground, monkeypatch):
    import pilotwave.ensemble as ens
    monkeypatch.setattr(ens, "TELEMETRY_EVERY", 4)
    seen = []
    run_chain(ground, 1.0, 20.0, 9, progress=lambda done, total: seen.append((done, total)))
    assert seen == [(4, 9), (8, 9)]


def test_outcome_sequence_examples():
    recs = [RecurrenceRecord(i, x, Outcome.of(x), x) for i, x in enumerate([-0.3, 0.7, -1.2])]
    assert outcome_sequence(recs) == [Outcome.LEFT, Outcome.RIGHT, Outcome.LEFT]
    assert outcome_sequence([]) == []


def test_invalid_arguments(ground):
    with pytest.raises(ValueError):
        run_chain(ground, 1.0, 20.0, 0)
    with pytest.raises(ValueError):
        step_recurrence(ground, 1.0, -1.0, OdeSpec())
