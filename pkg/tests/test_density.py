import math

import numpy as np
import pytest
from conftest import trig_polys
from hypothesis import given
from hypothesis import strategies as st

from coadjoint import density
from coadjoint.config import settings
from coadjoint.density import Density
from coadjoint.diffeo import CircleDiffeo, compose, flow, rotation
from coadjoint.errors import UnsupportedCarrier, WeightMismatch
from coadjoint.sampling import random_diffeo, random_trig
from coadjoint.trig import HalfTrigPoly, TrigPoly

weights = st.sampled_from([-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0])


def test_lie_derivative_anchor():
    # sin * (-sin) + 2 cos * cos = 1/2 + (3/2) cos 2x
    out = density.lie_derivative(TrigPoly.sin_mode(1), Density(2.0, TrigPoly.cos_mode(1)))
    assert out.value.distance(TrigPoly.from_coeffs(0.5, [0.0, 1.5], [])) < 1e-15


def test_rotation_translates():
    out = density.diffeo_act(rotation(0.5), Density(1.5, TrigPoly.cos_mode(1)))
    x = np.linspace(0, 6, 13)
    assert np.allclose(out.value(x), np.cos(x - 0.5), atol=1e-14)


def test_weight_zero_is_function_transport():
    g = CircleDiffeo(0.1, TrigPoly.sin_mode(1, 0.2))
    a = Density(0.0, TrigPoly.cos_mode(2))
    out = density.diffeo_act(g, a)
    x = np.linspace(0, 6, 11)
    # (g*a)(g(x)) = a(x)
    assert np.allclose(out.value(g(x)), a.value(x), atol=1e-12)


def test_weight_one_preserves_integral(rng):
    a = Density(1.0, random_trig(rng, 5))
    out = density.diffeo_act(random_diffeo(rng), a)
    assert abs(density.integrate_period(out.value) - density.integrate_period(a.value)) < 1e-12


def test_action_law(rng):
    for lam in (-1.0, 0.5, 2.0):
        g, h, a = random_diffeo(rng), random_diffeo(rng), Density(lam, random_trig(rng, 5))
        lhs = density.diffeo_act(g, density.diffeo_act(h, a))
        assert lhs.value.distance(density.diffeo_act(compose(g, h), a).value) <= 10 * settings().eps_proj


def test_infinitesimal_action(rng):
    X, a, h = random_trig(rng, 3, 0.3, False), Density(1.5, random_trig(rng, 3, 0.3)), 1e-3
    fd = (density.diffeo_act(flow(X, h), a).value - density.diffeo_act(flow(X, -h), a).value) * (0.5 / h)
    assert fd.distance(-density.lie_derivative(X, a).value) < 1e-5


@given(trig_polys(), trig_polys(), trig_polys(), weights)
def test_lie_algebra_action(X, Y, f, lam):
    a, L = Density(lam, f), density.lie_derivative
    Z = X * Y.derivative() - Y * X.derivative()
    lhs = L(X, L(Y, a)).value - L(Y, L(X, a)).value
    assert lhs.distance(L(Z, a).value) < 1e-12


@given(trig_polys(), trig_polys(), trig_polys(), weights)
def test_pairing_invariance(X, f, g, lam):
    a, b = Density(lam, f), Density(1 - lam, g)
    L = density.lie_derivative
    assert abs(density.pairing(L(X, a), b) + density.pairing(a, L(X, b))) < 1e-12


def test_pairing_errors():
    with pytest.raises(WeightMismatch):
        density.pairing(Density(1.0, TrigPoly.constant(1)), Density(1.0, TrigPoly.constant(1)))
    with pytest.raises(UnsupportedCarrier):
        density.pairing(Density(0.5, TrigPoly.constant(1)), Density(0.5, HalfTrigPoly.cos_mode(0)))


def test_antiperiodic_transport_unsupported():
    with pytest.raises(UnsupportedCarrier):
        density.diffeo_act(rotation(0.1), Density(-0.5, HalfTrigPoly.cos_mode(0)))


def test_sum_requires_same_weight():
    with pytest.raises(WeightMismatch):
        Density(1.0, TrigPoly.constant(1)) + Density(2.0, TrigPoly.constant(1))


def test_product_adds_weights():
    out = Density(0.5, TrigPoly.cos_mode(1)) * Density(1.5, TrigPoly.cos_mode(1))
    assert out.weight == 2.0
    assert abs(density.integrate_period(out.value) - math.pi) < 1e-14


def test_dict_round_trip():
    a = Density(-0.5, HalfTrigPoly(np.array([0.2, 0.1]), np.array([0.0, 0.4])))
    b = Density.from_dict(a.to_dict())
    assert b.antiperiodic and b.allclose(a)
