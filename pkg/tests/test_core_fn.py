import math

import numpy as np
import pytest
from conftest import half_polys, trig_polys
from hypothesis import given

from coadjoint.config import override, settings
from coadjoint.diffeo import CircleDiffeo, compose, flow, identity, invert, invert_points, rotation
from coadjoint.errors import ConfigError, NewtonDivergence, NotADiffeomorphism, ProjectionOverflow
from coadjoint.trig import (HalfTrigPoly, QuadratureGrid, TrigPoly, function_from_dict,
                            integrate_period, project)


def test_product_of_first_modes():
    # sin x cos x = sin(2x) / 2
    prod = TrigPoly.sin_mode(1) * TrigPoly.cos_mode(1)
    assert prod.distance(TrigPoly.sin_mode(2, 0.5)) < 1e-15


def test_half_times_half_is_periodic():
    # sin^2(x/2) = (1 - cos x) / 2
    s = HalfTrigPoly.sin_mode(0)
    sq = s * s
    assert isinstance(sq, TrigPoly)
    assert sq.distance(TrigPoly.from_coeffs(0.5, [-0.5], [])) < 1e-15


def test_half_times_periodic_is_half():
    out = HalfTrigPoly.cos_mode(0) * TrigPoly.cos_mode(1)
    assert isinstance(out, HalfTrigPoly)
    x = np.linspace(0, 2 * np.pi, 7)
    assert np.allclose(out(x), np.cos(x / 2) * np.cos(x), atol=1e-14)


def test_half_is_antiperiodic():
    h = HalfTrigPoly(np.array([0.3, -0.2]), np.array([0.1, 0.7]))
    x = np.linspace(0, 1, 5)
    assert np.allclose(h(x + 2 * np.pi), -h(x), atol=1e-14)


def test_integral_anchors():
    assert abs(integrate_period(TrigPoly.constant(1.0)) - 2 * math.pi) < 1e-15
    assert abs(integrate_period(TrigPoly.cos_mode(1) * TrigPoly.cos_mode(1)) - math.pi) < 1e-14


@given(trig_polys())
def test_integral_of_derivative_vanishes(f):
    assert abs(integrate_period(f.derivative())) <= 1e-14


@given(trig_polys(), trig_polys())
def test_leibniz(f, g):
    lhs = (f * g).derivative()
    assert lhs.distance(f.derivative() * g + f * g.derivative()) < 1e-12


@given(half_polys(), half_polys())
def test_leibniz_half(f, g):
    assert (f * g).derivative().distance(f.derivative() * g + f * g.derivative()) < 1e-12


@given(trig_polys())
def test_dict_round_trip(f):
    g = function_from_dict(f.to_dict())
    assert g.distance(f) == 0.0


def test_projection_recovers_polynomial():
    f = TrigPoly.from_coeffs(0.2, [1.0, 0.0, -0.5], [0.0, 0.3, 0.0])
    grid = QuadratureGrid()
    assert project(f(grid.nodes)).distance(f) < 1e-14


def test_projection_overflow():
    with override(n_max=8):
        x = QuadratureGrid().nodes
        with pytest.raises(ProjectionOverflow):
            project(np.cos(20 * x))


def test_override_is_scoped_and_validated():
    base = settings().n_max
    with override(n_max=16):
        assert settings().n_max == 16
        assert settings().grid_size == 64
    assert settings().n_max == base
    with pytest.raises(ConfigError):
        with override(n_max=-1):
            pass


def test_not_a_diffeomorphism():
    with pytest.raises(NotADiffeomorphism):
        CircleDiffeo(0.0, TrigPoly.sin_mode(1, 1.5))


def test_rotation_composition():
    assert compose(rotation(0.3), rotation(0.4)).distance(rotation(0.7)) < 1e-15


def test_compose_with_rotation_is_exact_shift():
    # f(x + a) for f = x + 0.2 sin x
    f = CircleDiffeo(0.0, TrigPoly.sin_mode(1, 0.2))
    h = compose(f, rotation(0.5))
    x = np.linspace(0, 6, 9)
    assert np.allclose(h(x), x + 0.5 + 0.2 * np.sin(x + 0.5), atol=1e-13)


def test_inverse_anchor():
    f = CircleDiffeo(0.0, TrigPoly.sin_mode(1, 0.3))
    assert compose(f, invert(f)).distance(identity()) <= settings().eps_proj
    assert compose(invert(f), f).distance(identity()) <= settings().eps_proj


def test_constant_field_flow_is_rotation():
    assert flow(TrigPoly.constant(0.7), 2.0).distance(rotation(1.4)) < 1e-12


def test_flow_of_sin_matches_closed_form():
    # dx/dt = sin x has tan(x(t)/2) = e^t tan(x0/2)
    g = flow(TrigPoly.sin_mode(1), 0.5)
    x0 = np.linspace(-3.0, 3.0, 11)
    exact = 2 * np.arctan(np.exp(0.5) * np.tan(x0 / 2))
    assert np.allclose(g(x0), exact, atol=1e-9)


def test_flow_group_law(rng):
    X = TrigPoly.from_coeffs(0.1, [0.3, -0.1], [0.2, 0.05])
    assert compose(flow(X, 0.4), flow(X, 0.3)).distance(flow(X, 0.7)) <= 10 * settings().eps_proj


def test_newton_divergence():
    f = CircleDiffeo(0.0, TrigPoly.sin_mode(1, 0.3))
    with override(newton_max_iter=1):
        with pytest.raises(NewtonDivergence):
            invert_points(f, np.linspace(0, 6, 5))


def test_diffeo_dict_round_trip():
    f = CircleDiffeo(0.25, TrigPoly.from_coeffs(0.0, [0.1], [0.05]))
    assert CircleDiffeo.from_dict(f.to_dict()).distance(f) == 0.0
