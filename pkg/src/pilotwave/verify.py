"""Residual checks that the implemented fields solve their defining equations.

Every check walks a rectangular (x, t) grid, evaluates a pointwise residual
with fourth-order finite differences and reduces it with a max.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from numba import njit

from .errors import NonConvergence
from .models.ground import (GroundStateSplitModel, density_dt_k, density_k, gs_density,
                            gs_potential, gs_velocity, velocity_k)
from .numerics.finite_diff import _CENTRAL, _FORWARD
from .numerics.quadrature import OK, QuadratureSpec, adaptive_gk

DENSITY_FLOOR = 1e-12
DEFAULT_H = 1e-3
TAIL_LENGTH = 15.0


@dataclass(frozen=True)
class Grid:
    """Rectangular grid; with ``margin`` set, rows keep only |x| <= t + margin."""

    x_min: float
    x_max: float
    dx: float
    t_min: float
    t_max: float
    dt: float
    margin: float | None = None

    def __post_init__(self):
        if not (self.dx > 0 and self.dt > 0):
            raise ValueError("grid spacings must be positive")
        if self.x_max < self.x_min or self.t_max < self.t_min:
            raise ValueError("grid ranges must be non-decreasing")

    @staticmethod
    def _axis(lo, hi, step):
        n = int(math.floor((hi - lo) / step + 1e-9))
        return np.array([lo + i * step for i in range(n + 1)])

    @property
    def xs(self):
        return self._axis(self.x_min, self.x_max, self.dx)

    @property
    def ts(self):
        return self._axis(self.t_min, self.t_max, self.dt)

    def points(self):
        for t in self.ts:
            for x in self.xs:
                if self.margin is None or abs(x) <= t + self.margin:
                    yield float(x), float(t)


@dataclass
class ResidualReport:
    name: str
    grid: Grid
    max_abs_residual: float = 0.0
    location: tuple = (math.nan, math.nan)
    breakdown: dict = field(default_factory=dict)
    points: int = 0
    skipped: int = 0
    relative: bool = False

    def update(self, x, t, value, parts=None):
        self.points += 1
        if value > self.max_abs_residual or self.points == 1:
            self.max_abs_residual = value
            self.location = (x, t)
        for key, v in (parts or {}).items():
            self.breakdown[key] = max(self.breakdown.get(key, 0.0), v)

    def passed(self, threshold):
        return self.points > 0 and self.max_abs_residual < threshold

    def to_dict(self):
        return {"name": self.name, "grid": asdict(self.grid),
                "max_abs_residual": self.max_abs_residual, "location": list(self.location),
                "breakdown": dict(self.breakdown), "points": self.points,
                "skipped": self.skipped, "relative": self.relative}


def _derivative_t(f, t, h, order, t_ok):
    """d^order f / dt^order, central when the stencil fits, one-sided otherwise."""
    if t_ok(t - 2 * h) and t_ok(t + 2 * h):
        return sum(c * f(t + k * h) for k, c in _CENTRAL[order]) / h ** order
    if t_ok(t + 5 * h):
        return sum(c * f(t + k * h) for k, c in _FORWARD[order]) / h ** order
    # backward: mirror of the forward stencil
    return (-1) ** order * sum(c * f(t - k * h) for k, c in _FORWARD[order]) / h ** order


def _derivative_x(f, x, h, order):
    return sum(c * f(x + k * h) for k, c in _CENTRAL[order]) / h ** order


def _t_range(model):
    lo = 0.0
    hi = getattr(model, "split_time", None)
    if hi is None:
        hi = getattr(model, "t_max", math.inf)
    return lo, hi


def continuity_residual(model, grid, velocity=None, h=DEFAULT_H):
    """max |d_t rho + d_x(rho v)| over the grid.

    ``velocity(x, t)`` overrides the model's field (used for fault injection).
    Points whose stencil touches rho < 1e-12 (node neighbourhoods, far tails)
    are skipped and counted.
    """
    v = velocity or model.velocity
    t_lo, t_hi = _t_range(model)
    t_ok = lambda s: t_lo <= s <= t_hi  # noqa: E731
    report = ResidualReport("continuity", grid)
    for x, t in grid.points():
        xs = [x + k * h for k in range(-2, 3)]
        if min(model.density(y, t) for y in xs) < DENSITY_FLOOR:
            report.skipped += 1
            continue
        rho_t = _derivative_t(lambda s: model.density(x, s), t, h, 1, t_ok)
        flux_x = _derivative_x(lambda y: model.density(y, t) * v(y, t), x, h, 1)
        r = abs(rho_t + flux_x)
        report.update(x, t, r)
    report.breakdown["continuity"] = report.max_abs_residual
    return report


@njit(cache=True)
def _v_step(y, p):
    return velocity_k(y, p[1], (0.0,)) - velocity_k(y, p[0], (0.0,))


@njit(cache=True)
def _v_at(y, p):
    return velocity_k(y, p[0], (0.0,))


def _quad(f, args, a, b, spec):
    if a == b:
        return 0.0
    if b < a:
        return -_quad(f, args, b, a, spec)
    value, _, status = adaptive_gk(f, args, a, b, spec.abs_tol, spec.rel_tol,
                                   spec.max_subdivisions)
    if status != OK:
        raise NonConvergence(f"phase increment over [{a!r}, {b!r}] did not converge")
    return value


def _phase_dx(x, t, d, spec):
    """S(x + d, t) - S(x, t) as the integral of the velocity over [x, x + d]."""
    return _quad(_v_at, (t, 0.0), x, x + d, spec)


def _phase_dt(x, t, d, spec):
    """S(x, t + d) - S(x, t): integral over [0, x] of the velocity change, minus d / 2."""
    return _quad(_v_step, (t, t + d), 0.0, x, spec) - 0.5 * d


def schrodinger_residual_gs(grid, h_x=DEFAULT_H, h_t=DEFAULT_H, potential_offset=0.0,
                            spec=QuadratureSpec(1e-15, 1e-13)):
    """Relative residual |i psi_t + psi_xx / 2 - V psi| / |psi| of the ground model.

    Stencil values enter as ratios psi(x', t') / psi(x, t), built from density
    ratios and phase increments, so the check never touches the exponentially
    small absolute scale of psi. The real part of the normalised residual is
    the quantum Hamilton-Jacobi equation, the imaginary part is continuity
    divided by 2 rho.
    """
    report = ResidualReport("schrodinger", grid, relative=True)
    t_ok = lambda s: 0.0 <= s  # noqa: E731
    for x, t in grid.points():
        rho0 = gs_density(x, t)

        def ratio_x(y):
            d = y - x
            return math.sqrt(gs_density(y, t) / rho0) * np.exp(1j * _phase_dx(x, t, d, spec))

        def ratio_t(s):
            d = s - t
            return math.sqrt(gs_density(x, s) / rho0) * np.exp(1j * _phase_dt(x, t, d, spec))

        psi_t = _derivative_t(ratio_t, t, h_t, 1, t_ok)
        psi_xx = _derivative_x(ratio_x, x, h_x, 2)
        pot = gs_potential(x, t) + potential_offset
        r = 1j * psi_t + 0.5 * psi_xx - pot
        report.update(x, t, float(abs(r)), {"schrodinger": float(abs(r)),
                                            "hamilton_jacobi": float(abs(r.real)),
                                            "continuity": float(abs(r.imag))})
    return report


def quadrature_velocity_gs(x, t, rel=1e-14):
    """Velocity from continuity alone: -(1/rho) int_0^x d_t rho.

    Beyond the packet centre the zero-flux identity turns the integral into a
    tail integral, which keeps full relative accuracy where rho is tiny.
    """
    x = float(x)
    t = float(t)
    if x == 0.0 or t == 0.0:
        return 0.0
    rho = float(density_k(x, t))
    spec = QuadratureSpec(max(rel * rho, 1e-300), rel, 400)
    if abs(x) <= max(t, 1.0):
        flux = -_quad(density_dt_k, t, 0.0, x, spec)
    elif x > 0:
        flux = _quad(density_dt_k, t, x, x + TAIL_LENGTH, spec)
    else:
        flux = -_quad(density_dt_k, t, x - TAIL_LENGTH, x, spec)
    return flux / rho


def velocity_crosscheck_gs(grid):
    """max |closed-form velocity - continuity-quadrature velocity| over the grid."""
    report = ResidualReport("velocity_crosscheck", grid)
    for x, t in grid.points():
        r = abs(gs_velocity(x, t) - quadrature_velocity_gs(x, t))
        report.update(x, t, r)
    report.breakdown["velocity"] = report.max_abs_residual
    return report


# grids and thresholds used by the CLI verify verb and the acceptance suite
GROUND_CONTINUITY_GRID = Grid(-8.0, 8.0, 0.05, 0.5, 15.0, 0.5)
EXCITED_CONTINUITY_GRID = Grid(-8.0, 8.0, 0.05, 0.5, 9.5, 0.5)
SCHRODINGER_GRID = Grid(-6.0, 6.0, 0.25, 0.5, 5.0, 0.25)
CROSSCHECK_GRID = Grid(-10.0, 10.0, 0.5, 0.1, 20.0, 0.1)
CONTINUITY_THRESHOLD = {"ground": 1e-6, "excited": 1e-5}
SCHRODINGER_THRESHOLD = 1e-5
CROSSCHECK_THRESHOLD = 1e-8


def default_suite(model, velocity=None):
    """[(report, threshold)] for everything that applies to ``model``."""
    if isinstance(model, GroundStateSplitModel):
        return [
            (continuity_residual(model, GROUND_CONTINUITY_GRID, velocity),
             CONTINUITY_THRESHOLD["ground"]),
            (schrodinger_residual_gs(SCHRODINGER_GRID), SCHRODINGER_THRESHOLD),
            (velocity_crosscheck_gs(CROSSCHECK_GRID), CROSSCHECK_THRESHOLD),
        ]
    return [(continuity_residual(model, EXCITED_CONTINUITY_GRID, velocity),
             CONTINUITY_THRESHOLD["excited"])]
