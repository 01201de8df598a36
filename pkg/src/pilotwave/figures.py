"""Gridded CSV + SVG analogues of the eight figures of the splitting experiments.

Artifacts, all written to the output directory:

=================================  =========================================
fig1_amplitude_ground.{csv,svg}    R(x, t) of the splitting ground state
fig2_potential_ground.{csv,svg}    external potential V(x, t)
fig3_trajectories_ground.{csv,svg} trajectory fan, ground state
fig4_recurrences_ground.{csv,svg}  first 100 recurrence positions
fig5_histogram_ground.{csv,svg}    position histogram vs exp(-x^2)/sqrt(pi)
fig6_amplitude_excited.{csv,svg}   R(x, t) of the splitting excited state
fig7_trajectories_excited.{csv,svg} trajectory fan, excited state
fig8_histogram_excited.{csv,svg}   histogram vs 2 x^2 exp(-x^2)/sqrt(pi)
=================================  =========================================
"""

import math
import os

import numpy as np

from .artifacts import histogram_rows, summarize_positions, write_csv, write_ensemble_csv
from .ensemble import run_chain
from .errors import PilotWaveError
from .models.excited import es_amplitude
from .models.ground import gs_amplitude, gs_potential
from .svg import PALETTE, Figure
from .trajectories import FailedTrajectory, trajectory_fan

FIGURES = (
    "fig1_amplitude_ground", "fig2_potential_ground", "fig3_trajectories_ground",
    "fig4_recurrences_ground", "fig5_histogram_ground", "fig6_amplitude_excited",
    "fig7_trajectories_excited", "fig8_histogram_excited",
)
GROUND_FAN = tuple(round(-3.0 + 0.25 * i, 2) for i in range(25))
EXCITED_FAN = tuple(round(-3.0 + 0.25 * i, 2) for i in range(25))
SCATTER_COUNT = 100


def _axis(lo, hi, step):
    n = int(round((hi - lo) / step))
    return [round(lo + i * step, 12) for i in range(n + 1)]


def _safe(f, x, t):
    try:
        return f(x, t)
    except (PilotWaveError, ValueError):
        return math.nan


def surface(f, xs, ts):
    """values[j][i] = f(xs[i], ts[j]); points where f refuses are NaN."""
    return [[_safe(f, x, t) for x in xs] for t in ts]


def write_surface(stem, xs, ts, values, label, title):
    write_csv(stem + ".csv", ["x", "t", label],
              ((x, t, values[j][i]) for j, t in enumerate(ts) for i, x in enumerate(xs)))
    fig = Figure((xs[0], xs[-1]), (ts[0], ts[-1]), title=title, x_label="x", y_label="t")
    fig.heatmap(xs, ts, values)
    fig.save(stem + ".svg")


def write_fan(stem, fan, title, svg=True):
    ok = [tr for tr in fan if not isinstance(tr, FailedTrajectory)]
    t = ok[0].t if ok else np.array([])
    header = ["t"] + [f"x_{i + 1}" for i in range(len(fan))]
    cols = [None if isinstance(tr, FailedTrajectory) else tr.x for tr in fan]
    rows = ([t[k]] + [None if c is None else c[k] for c in cols] for k in range(len(t)))
    write_csv(stem + ".csv", header, rows)
    if not svg:
        return
    lo = min((float(tr.x.min()) for tr in ok), default=-1.0)
    hi = max((float(tr.x.max()) for tr in ok), default=1.0)
    fig = Figure((float(t[0]) if len(t) else 0.0, float(t[-1]) if len(t) else 1.0),
                 (lo - 0.5, hi + 0.5), title=title, x_label="t", y_label="x")
    for i, tr in enumerate(ok):
        fig.polyline(tr.t, tr.x, color=PALETTE[i % len(PALETTE)], width=0.9)
    fig.save(stem + ".svg")


def write_histogram(stem, h, model, title):
    rows = list(histogram_rows(h, model))
    write_csv(stem + ".csv", ["bin_left", "bin_right", "count", "density", "reference"], rows)
    lo = min(r[0] for r in rows)
    hi = max(r[1] for r in rows)
    half = max(4.0, abs(lo), abs(hi))
    ymax = 1.15 * max(max(r[3] for r in rows), max(r[4] for r in rows))
    fig = Figure((-half, half), (0.0, ymax), title=title, x_label="x", y_label="density")
    fig.bars([r[0] for r in rows], h.bin_width, [r[3] for r in rows])
    xs = np.linspace(-half, half, 801)
    fig.polyline(xs, [model.reference_density(float(x)) for x in xs], color=PALETTE[1], width=1.6)
    fig.save(stem + ".svg")


def write_scatter(stem, positions, title):
    positions = list(positions)[:SCATTER_COUNT]
    write_ensemble_csv(stem + ".csv", positions)
    lim = max(3.0, max(abs(p) for p in positions) + 0.5)
    fig = Figure((0, max(len(positions), 2)), (-lim, lim), title=title,
                 x_label="recurrence", y_label="relative position")
    fig.polyline([0, len(positions)], [0.0, 0.0], color="#999999", width=0.6)
    fig.markers(range(1, len(positions) + 1), positions)
    fig.save(stem + ".svg")


def make_figures(out_dir, ground, excited, recurrences, bin_width, ode, x0=1.0):
    """Write every figure artifact; returns {figure name: [paths]}."""
    os.makedirs(out_dir, exist_ok=True)
    stem = lambda name: os.path.join(out_dir, name)  # noqa: E731
    made = {}

    xs, ts = _axis(-10.0, 10.0, 0.2), _axis(0.0, 8.0, 0.2)
    write_surface(stem(FIGURES[0]), xs, ts, surface(gs_amplitude, xs, ts), "R",
                  "ground-state splitting: amplitude R(x, t)")
    xs, ts = _axis(-6.0, 6.0, 0.2), _axis(0.0, 5.0, 0.1)
    write_surface(stem(FIGURES[1]), xs, ts, surface(gs_potential, xs, ts), "V",
                  "ground-state splitting: potential V(x, t)")
    fan = trajectory_fan(ground, GROUND_FAN, (0.0, ground.default_horizon), ode)
    write_fan(stem(FIGURES[2]), fan, "ground-state trajectories")

    n = max(int(recurrences), SCATTER_COUNT)
    chain = run_chain(ground, x0, ground.default_horizon, n, ode)
    write_scatter(stem(FIGURES[3]), chain.positions, "first recurrences, ground state")
    _, h = summarize_positions(chain.positions[:recurrences], ground, bin_width)
    write_histogram(stem(FIGURES[4]), h, ground, f"ground state, {h.total} recurrences")

    tau = excited.split_time
    xs, ts = _axis(-15.0, 15.0, 0.2), _axis(0.0, tau, 0.2)
    write_surface(stem(FIGURES[5]), xs, ts,
                  surface(lambda x, t: es_amplitude(x, t, tau), xs, ts), "R",
                  "excited-state splitting: amplitude R(x, t)")
    fan = trajectory_fan(excited, EXCITED_FAN, (0.0, tau), ode)
    write_fan(stem(FIGURES[6]), fan, "excited-state trajectories")
    chain = run_chain(excited, x0, tau, int(recurrences), ode)
    _, h = summarize_positions(chain.positions, excited, bin_width)
    write_histogram(stem(FIGURES[7]), h, excited, f"excited state, {h.total} recurrences")

    for name in FIGURES:
        made[name] = [stem(name) + ".csv", stem(name) + ".svg"]
    return made
