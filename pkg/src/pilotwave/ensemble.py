"""The deterministic recurrence map: split, measure LEFT/RIGHT, re-centre, repeat.

One recurrence integrates the guidance equation from t = 0 to the horizon T,
subtracts the centre (+T or -T) of the well the particle ended in, and feeds
the resulting relative position back in as the next initial position. There
is no randomness anywhere; the ensemble is the orbit of this map.
"""

import logging
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DegenerateEquilibrium, PilotWaveError
from .numerics.ode import OdeSpec
from .trajectories import integrate_model

log = logging.getLogger(__name__)

TELEMETRY_EVERY = 10_000


class Outcome(str, Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"

    @classmethod
    def of(cls, relative_position):
        return cls.LEFT if relative_position < 0 else cls.RIGHT


@dataclass(frozen=True)
class RecurrenceRecord:
    index: int
    relative_position: float
    outcome: Outcome
    absolute_final: float


@dataclass
class RecurrenceChain:
    """Orbit of the recurrence map, stored column-wise.

    ``truncation`` holds the error message when a step failed before
    ``requested`` recurrences were produced.
    """

    model: str
    x0: float
    horizon: float
    ode: OdeSpec
    requested: int
    positions: np.ndarray = field(repr=False)
    finals: np.ndarray = field(repr=False)
    truncation: str | None = None
    elapsed: float = 0.0

    def __len__(self):
        return len(self.positions)

    @property
    def records(self):
        return [RecurrenceRecord(i, float(p), Outcome.of(p), float(a))
                for i, (p, a) in enumerate(zip(self.positions, self.finals))]

    @property
    def truncated(self):
        return self.truncation is not None


def _one_step(model, x_in, horizon, ode, t_out):
    if x_in == 0.0:
        raise DegenerateEquilibrium(
            "x = 0 is the unstable equilibrium: the particle never commits to a packet")
    x_final = float(integrate_model(model, x_in, 0.0, horizon, ode, t_out)[-1])
    center = horizon if x_final > 0 else -horizon
    return x_final - center, x_final


def step_recurrence(model, x_in, horizon=None, ode=OdeSpec()):
    """One recurrence from ``x_in``; returns the record with index 0."""
    horizon = float(model.default_horizon if horizon is None else horizon)
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    t_out = np.array([horizon])
    rel, final = _one_step(model, float(x_in), horizon, ode, t_out)
    return RecurrenceRecord(0, rel, Outcome.of(rel), final)


def run_chain(model, x0, horizon=None, count=1, ode=OdeSpec(), progress=None):
    """Iterate the recurrence map ``count`` times starting from ``x0``.

    Record n holds the relative position produced by the (n+1)-th splitting;
    record n+1 was seeded with record n's relative position. A failing step
    truncates the chain and its message is kept in ``truncation``.
    ``progress(done, count)`` is called every TELEMETRY_EVERY steps.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    horizon = float(model.default_horizon if horizon is None else horizon)
    if not horizon > 0:
        raise ValueError("horizon must be positive")
    x0 = float(x0)
    if x0 == 0.0:
        raise DegenerateEquilibrium("chain seeded at the unstable equilibrium x = 0")
    positions = np.empty(count)
    finals = np.empty(count)
    t_out = np.array([horizon])
    truncation = None
    started = time.perf_counter()
    x = x0
    n = 0
    while n < count:
        try:
            x, final = _one_step(model, x, horizon, ode, t_out)
        except PilotWaveError as exc:
            truncation = f"step {n}: {type(exc).__name__}: {exc}"
            log.warning("chain %s x0=%r truncated at %d/%d: %s", model.name, x0, n, count, exc)
            break
        positions[n] = x
        finals[n] = final
        n += 1
        if n % TELEMETRY_EVERY == 0:
            log.info("chain %s x0=%r T=%g: %d/%d recurrences (%.1fs)", model.name, x0,
                     horizon, n, count, time.perf_counter() - started)
            if progress is not None:
                progress(n, count)
    return RecurrenceChain(model=model.name, x0=x0, horizon=horizon, ode=ode, requested=count,
                           positions=positions[:n].copy(), finals=finals[:n].copy(),
                           truncation=truncation, elapsed=time.perf_counter() - started)


def outcome_sequence(chain):
    """LEFT/RIGHT reading of every recurrence, in order."""
    if isinstance(chain, RecurrenceChain):
        positions = chain.positions
    else:
        positions = [r.relative_position for r in chain]
    return [Outcome.of(p) for p in positions]
