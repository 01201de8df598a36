import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pilotwave.errors import DomainError, NodeSingularity
from pilotwave.models import ExcitedStateSplitModel, GroundStateSplitModel, well_center
from pilotwave.models.base import reference_density
from pilotwave.models.excited import (es_density, es_density_dt, es_velocity, es_velocity_moments,
                                      norm_k)
from pilotwave.models.ground import (gs_density, gs_density_dt, gs_phase_f, gs_potential,
                                     gs_velocity, gs_velocity_dt)
from pilotwave.numerics import QuadratureSpec, central_diff, forward_diff, integrate
from pilotwave.verify import quadrature_velocity_gs

SQRT_PI = math.sqrt(math.pi)
TIGHT = QuadratureSpec(1e-14, 1e-13, 400)


def mp_gs_velocity(x, t):
    """Closed-form guidance velocity evaluated literally in 60-digit arithmetic."""
    with mpmath.workdps(60):
        x, t = mpmath.mpf(x), mpmath.mpf(t)
        e = mpmath.erf(t - x) + 2 * mpmath.erf(x) - mpmath.erf(t + x)
        return float(mpmath.tanh(x * t) + mpmath.sqrt(mpmath.pi) * t * mpmath.exp((x + t) ** 2) * e
                     / ((mpmath.exp(t * t) + 1) * (mpmath.exp(2 * x * t) + 1) ** 2))


def mp_es_psi_abs2(x, t, tau=10):
    """|psi|^2 of the excited model with the printed normalisation, 50 digits."""
    x, t = mpmath.mpf(x), mpmath.mpf(t)
    a = mpmath.exp(-(x - t) ** 2 / 2)
    b = mpmath.exp(-(x + t) ** 2 / 2)
    re = t * ((x - t) * a + (t + x) * b)
    im = (tau - t) * x * (a + b)
    den2 = (4 * mpmath.pi) ** 0.5 * mpmath.exp(-t * t) * (
        t * (-t ** 3 + t - 10) + mpmath.exp(t * t) * ((t - 10) * t * (t * t - 10 * t + 1) + 50) + 50)
    return (re * re + im * im) / den2


def mp_es_velocity(x, t):
    """-(1/rho) int_0^x d_t rho with mpmath differentiation and quadrature."""
    with mpmath.workdps(40):
        flux = mpmath.quad(lambda y: mpmath.diff(lambda s: mp_es_psi_abs2(y, s), t), [0, x])
        return float(-flux / mp_es_psi_abs2(x, t))


# ground state

def test_gs_density_examples():
    assert gs_density(0.0, 0.0) == pytest.approx(1 / SQRT_PI, rel=1e-15)
    assert gs_density(-2.0, 3.0) == gs_density(2.0, 3.0)
    value, _ = integrate(lambda x: gs_density(x, 5.0), -15.0, 15.0, TIGHT)
    assert abs(value - 1.0) <= 1e-10


@pytest.mark.parametrize("t", [0.0, 0.7, 3.0, 10.0, 24.0])
def test_gs_normalised(t):
    value, _ = integrate(lambda x: gs_density(x, t), -t - 12.0, t + 12.0, TIGHT)
    assert abs(value - 1.0) <= 1e-10


def test_gs_density_is_squared_amplitude():
    for x, t in [(0.3, 0.2), (-1.5, 2.0), (4.0, 3.5)]:
        with mpmath.workdps(30):
            r = ((4 / mpmath.pi) ** 0.25 * mpmath.exp(-mpmath.mpf(x) ** 2 / 2)
                 * mpmath.cosh(mpmath.mpf(x) * t) / mpmath.sqrt(mpmath.exp(mpmath.mpf(t) ** 2) + 1))
        assert gs_density(x, t) == pytest.approx(float(r * r), rel=1e-13)


@pytest.mark.parametrize("x,t", [(0.3, 0.5), (1.0, 1.0), (-2.0, 3.0), (5.0, 4.0), (12.0, 6.0),
                                 (-0.01, 10.0), (19.0, 20.0), (21.5, 20.0), (34.0, 25.0)])
def test_gs_velocity_against_literal_formula(x, t):
    assert gs_velocity(x, t) == pytest.approx(mp_gs_velocity(x, t), rel=1e-12, abs=1e-13)


def test_gs_velocity_examples():
    for x in (-3.0, 0.5, 7.0):
        assert gs_velocity(x, 0.0) == 0.0
    for t in (0.0, 1.0, 20.0):
        assert gs_velocity(0.0, t) == 0.0
    assert abs(gs_velocity(1.0, 1.0) - quadrature_velocity_gs(1.0, 1.0)) <= 1e-8


@given(st.floats(-30, 30), st.floats(0, 20))
def test_gs_velocity_odd(x, t):
    if abs(x) <= t + 10:
        assert gs_velocity(-x, t) == -gs_velocity(x, t)


def test_gs_velocity_domain():
    with pytest.raises(DomainError):
        gs_velocity(15.0, 4.0)
    with pytest.raises(DomainError):
        gs_velocity(0.0, 26.0)
    with pytest.raises(DomainError):
        gs_velocity(1.0, -0.1)


def test_gs_asymptotic_speed():
    for t in (15.0, 20.0, 25.0):
        for x in np.linspace(t - 2, t + 2, 9):
            assert abs(abs(gs_velocity(x, t)) - 1.0) <= 0.01
            assert abs(abs(gs_velocity(-x, t)) - 1.0) <= 0.01


def test_gs_derivatives_against_finite_differences():
    for x, t in [(0.7, 1.3), (-2.0, 4.0), (6.0, 5.0)]:
        assert gs_density_dt(x, t) == pytest.approx(
            central_diff(lambda s: gs_density(x, s), t, 1e-3), rel=1e-8)
        assert gs_velocity_dt(x, t) == pytest.approx(
            central_diff(lambda s: gs_velocity(x, s), t, 1e-3), rel=1e-8, abs=1e-10)


def test_gs_phase_examples():
    for x in (-2.0, 1.0, 4.0):
        assert gs_phase_f(x, 0.0) == 0.0
    assert gs_phase_f(0.0, 7.0) == 0.0
    assert abs(gs_phase_f(3.0, 10.0) - 3.0) <= 0.05


def test_gs_potential_vanishes_at_start():
    for x in (-2.0, 0.0, 1.0, 3.0):
        assert abs(gs_potential(x, 0.0)) <= 1e-8


def test_gs_potential_forms_receding_wells():
    t = 15.0
    offsets = [gs_potential(t + d, t) - d * d / 2 for d in np.linspace(-2, 2, 17)]
    assert max(offsets) - min(offsets) <= 0.02
    left = [gs_potential(-t + d, t) - d * d / 2 for d in np.linspace(-2, 2, 17)]
    assert max(left) - min(left) <= 0.02


def test_gs_potential_even():
    for x, t in [(0.5, 1.0), (2.0, 3.0)]:
        assert gs_potential(-x, t) == pytest.approx(gs_potential(x, t), abs=1e-12)


def test_gs_mass_conserved_along_trajectory(ground):
    from pilotwave.trajectories import TrajectoryRequest, run_trajectory
    tr = run_trajectory(TrajectoryRequest(ground, 0.8, (0.0, 20.0), sample_count=41))
    c0 = ground.cumulative(0.8, 0.0)
    for t, x in tr.samples:
        assert abs(ground.cumulative(x, t) - c0) <= 1e-9


# excited state

def test_es_density_examples():
    for x in (0.3, 1.0, 2.5):
        assert es_density(x, 0.0) == pytest.approx(2 * x * x * math.exp(-x * x) / SQRT_PI,
                                                   rel=1e-14)
    for t in (0.0, 3.0, 10.0):
        assert es_density(0.0, t) == 0.0
    for t in (0.0, 5.0, 10.0):
        value, _ = integrate(lambda x: es_density(x, t), -t - 12.0, t + 12.0, TIGHT)
        assert abs(value - 1.0) <= 1e-10


@pytest.mark.parametrize("x,t", [(0.5, 0.0), (1.0, 1.0), (-2.0, 4.5), (3.0, 9.0), (11.0, 10.0)])
def test_es_density_against_printed_normalisation(x, t):
    with mpmath.workdps(50):
        ref = float(mp_es_psi_abs2(x, t))
    assert es_density(x, t) == pytest.approx(ref, rel=1e-12)


def test_es_norm_generalises():
    # the closed normalisation integrates the density to one for other split times as well
    m = ExcitedStateSplitModel(split_time=6.0)
    for t in (0.0, 2.0, 6.0):
        value, _ = integrate(lambda x: m.density(x, t), -t - 12.0, t + 12.0, TIGHT)
        assert abs(value - 1.0) <= 1e-10
    # printed squared normalisation at t = 0: sqrt(4 pi) * (50 + 50)
    assert norm_k(0.0, 10.0) == pytest.approx(200 * SQRT_PI, rel=1e-15)


def test_es_density_dt_examples():
    ref = forward_diff(lambda s: es_density(1.0, s), 0.0, 1e-3)
    assert abs(es_density_dt(1.0, 0.0) - ref) <= 1e-7
    for x, t in [(0.4, 2.0), (2.0, 6.0), (9.0, 9.5)]:
        ref = central_diff(lambda s: es_density(x, s), t, 1e-3)
        assert abs(es_density_dt(x, t) - ref) <= 1e-7
        assert es_density_dt(-x, t) == es_density_dt(x, t)
    assert es_density_dt(0.0, 4.0) == 0.0


@pytest.mark.parametrize("x,t", [(0.2, 3.0), (1.0, 1.0), (2.0, 5.0), (7.0, 6.0), (12.0, 9.0)])
def test_es_velocity_against_mpmath(x, t):
    ref = mp_es_velocity(x, t)
    assert es_velocity(x, t) == pytest.approx(ref, rel=1e-10, abs=1e-12)
    assert es_velocity_moments(x, t) == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_es_velocity_examples():
    for t in (0.0, 2.0, 10.0):
        assert es_velocity(0.0, t) == 0.0
    for x in (0.5, 1.0, 2.0):
        assert abs(es_velocity(x, 0.0)) <= 1e-12
        flux, _ = integrate(lambda y: es_density_dt(y, 0.0), 0.0, x, TIGHT)
        assert abs(flux) <= 1e-13
    for x, t in [(0.7, 2.0), (3.0, 8.0)]:
        assert es_velocity(-x, t) == -es_velocity(x, t)


@settings(deadline=None)
@given(st.floats(-14, 14), st.floats(0, 10))
def test_es_methods_agree(x, t):
    try:
        q = es_velocity(x, t)
    except NodeSingularity:
        return
    assert es_velocity_moments(x, t) == pytest.approx(q, rel=1e-9, abs=1e-10)


def test_es_quadrature_near_node():
    # density vanishes quadratically at the node; the flux must still converge
    for x in (6.9749528167915846e-06, 1e-3, -2e-8):
        for t in (0.5, 3.0, 9.0):
            q = es_velocity(x, t)
            assert es_velocity_moments(x, t) == pytest.approx(q, rel=1e-9, abs=1e-12)
            assert es_density(x, t) > 0


def test_es_node_and_range():
    with pytest.raises(NodeSingularity):
        es_velocity(1e-200, 5.0)
    with pytest.raises(ValueError):
        es_density(1.0, 10.5)
    with pytest.raises(ValueError):
        ExcitedStateSplitModel(velocity_method="spline")


# shared interface

def test_well_center_examples(ground, excited):
    assert well_center(ground, 20.0, "RIGHT") == 20.0
    assert well_center(ground, 0.0, "LEFT") == 0.0
    assert well_center(excited, 10.0, "LEFT") == -10.0
    with pytest.raises(ValueError):
        well_center(ground, 1.0, "UP")


def test_reference_densities(ground, excited):
    assert reference_density(ground, 0.0) == pytest.approx(1 / SQRT_PI)
    assert reference_density(excited, 0.0) == 0.0
    for m in (ground, excited):
        value, _ = integrate(m.reference_density, -8.0, 8.0, TIGHT)
        assert abs(value - 1.0) <= 1e-12
        assert m.reference_density(0.8) == pytest.approx(m.density(0.8, 0.0), rel=1e-14)
        assert m.reference_cdf(8.0) == pytest.approx(1.0, abs=1e-15)
        assert m.reference_cdf(1.1) - m.reference_cdf(-0.4) == pytest.approx(
            integrate(m.reference_density, -0.4, 1.1, TIGHT)[0], abs=1e-14)


@pytest.mark.parametrize("model", [GroundStateSplitModel(), ExcitedStateSplitModel()])
def test_zero_initial_velocity_and_oddness(model):
    for x in (0.25, 1.0, 2.5):
        assert abs(model.velocity(x, 0.0)) <= 1e-12
        for t in (1.0, 4.0):
            assert model.velocity(-x, t) == -model.velocity(x, t)
