import math

import numpy as np
import pytest
from conftest import trig_polys
from hypothesis import given
from hypothesis import strategies as st

from coadjoint import virasoro
from coadjoint.config import settings
from coadjoint.diffeo import CircleDiffeo, compose, flow, rotation
from coadjoint.sampling import random_diffeo, random_trig
from coadjoint.sturm import fundamental_path, monodromy_invariant
from coadjoint.trig import TrigPoly, integrate_period
from coadjoint.virasoro import VirasoroCovector, VirasoroElement

kinds = st.sampled_from(["standard", "modified"])
SL2 = [TrigPoly.constant(1.0), TrigPoly.sin_mode(1), TrigPoly.cos_mode(1)]


def test_gf_anchor():
    assert abs(virasoro.gf_cocycle(TrigPoly.sin_mode(1), TrigPoly.cos_mode(1)) + math.pi) <= 1e-12


def test_modified_vanishes_on_first_modes():
    assert abs(virasoro.gf_cocycle(TrigPoly.sin_mode(1), TrigPoly.cos_mode(1), "modified")) <= 1e-12


def test_gf_on_higher_modes():
    # int (k cos kx)(-k^2 cos kx) over the period for X = sin kx, Y = cos kx
    for k in (2, 3):
        val = virasoro.gf_cocycle(TrigPoly.sin_mode(k), TrigPoly.cos_mode(k))
        assert abs(val + math.pi * k ** 3) < 1e-11


@given(trig_polys(), trig_polys())
def test_cocycle_antisymmetric(X, Y):
    for kind in ("standard", "modified"):
        assert abs(virasoro.gf_cocycle(X, Y, kind) + virasoro.gf_cocycle(Y, X, kind)) < 1e-12


@given(trig_polys(), trig_polys(), trig_polys(), kinds)
def test_cocycle_identity(X, Y, Z, kind):
    w, br = virasoro.gf_cocycle, virasoro.vect_bracket
    total = w(X, br(Y, Z), kind) + w(Y, br(Z, X), kind) + w(Z, br(X, Y), kind)
    assert abs(total) < 1e-10


@given(trig_polys(), trig_polys())
def test_coboundary_relation(X, Y):
    diff = virasoro.gf_cocycle(X, Y, "modified") - virasoro.gf_cocycle(X, Y, "standard")
    assert abs(diff - integrate_period(X.derivative() * Y)) < 1e-12


@given(trig_polys())
def test_modified_sl2_equivariance(Y):
    for Z in SL2:
        assert abs(virasoro.gf_cocycle(Z, Y, "modified")) <= 1e-12


@given(trig_polys(), trig_polys(), trig_polys(), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), kinds)
def test_coadjoint_duality(X, Y, u, alpha, beta, c, kind):
    a, b = VirasoroElement(X, alpha), VirasoroElement(Y, beta)
    mu = VirasoroCovector(u, c)
    lhs = virasoro.coad(a, mu, kind).pair(b) + mu.pair(virasoro.vir_bracket(a, b, kind))
    assert abs(lhs) < 1e-10


def test_coad_constant_potential():
    # ad*_X (u0, 0) = 2 u0 X'
    out = virasoro.coad(TrigPoly.cos_mode(3), VirasoroCovector(TrigPoly.constant(0.5)))
    assert out.u.value.distance(TrigPoly.sin_mode(3, -3.0)) < 1e-15


def test_coad_central_term_sign():
    # ad*_cos (0, 1) = -cos''' = -sin
    out = virasoro.coad(TrigPoly.cos_mode(1), VirasoroCovector(TrigPoly.zero(), 1.0))
    assert out.u.value.distance(TrigPoly.sin_mode(1, -1.0)) < 1e-15
    mod = virasoro.coad(TrigPoly.cos_mode(1), VirasoroCovector(TrigPoly.zero(), 1.0), "modified")
    assert mod.u.value.max_coeff() < 1e-15


def test_schwarzian_anchor():
    f = CircleDiffeo(0.0, TrigPoly.sin_mode(1, 0.1))
    assert abs(float(virasoro.schwarzian_at(f, 0.0)) + 1.0 / 11.0) <= 1e-12


def test_schwarzian_of_rotation_is_zero():
    assert virasoro.schwarzian(rotation(0.8)).value.max_coeff() == 0.0


def test_schwarzian_of_projective_flow():
    # flow(sin, t) is a Moebius map on the circle: S = (1 - f'^2) / 2
    f = flow(TrigPoly.sin_mode(1), 0.6)
    x = np.linspace(0, 6, 17)
    expected = 0.5 * (1.0 - f.d1(x) ** 2)
    assert np.allclose(virasoro.schwarzian(f).value(x), expected, atol=1e-8)
    assert virasoro.schwarzian(f, "modified").value.max_coeff() <= 10 * settings().eps_proj


def test_schwarzian_group_cocycle(rng):
    for _ in range(5):
        f, g = random_diffeo(rng), random_diffeo(rng)
        lhs = virasoro.schwarzian(compose(f, g)).value
        rhs = virasoro.pullback2(g, virasoro.schwarzian(f).value) + virasoro.schwarzian(g).value
        assert lhs.distance(rhs) <= 10 * settings().eps_proj


def test_bott_vanishes_on_rotations(rng):
    g = random_diffeo(rng)
    assert abs(virasoro.bott_cocycle(rotation(0.4), g)) < 1e-13
    assert abs(virasoro.bott_cocycle(g, rotation(0.4))) < 1e-13


def test_bott_cocycle_identity(rng):
    B = virasoro.bott_cocycle
    for _ in range(10):
        f, g, h = random_diffeo(rng), random_diffeo(rng), random_diffeo(rng)
        assert abs(B(f, g) + B(compose(f, g), h) - B(f, compose(g, h)) - B(g, h)) < 1e-7


def test_group_coad_is_right_action(rng):
    mu = VirasoroCovector(random_trig(rng, 4), 0.7)
    f, g = random_diffeo(rng), random_diffeo(rng)
    lhs = virasoro.group_coad(compose(f, g), mu).u.value
    rhs = virasoro.group_coad(g, virasoro.group_coad(f, mu)).u.value
    assert lhs.distance(rhs) <= 10 * settings().eps_proj


def test_group_coad_derivative(rng):
    X, h = random_trig(rng, 3, 0.3, False), 1e-3
    mu = VirasoroCovector(random_trig(rng, 3, 0.3), 0.5)
    fd = (virasoro.group_coad(flow(X, h), mu).u.value
          - virasoro.group_coad(flow(X, -h), mu).u.value) * (0.5 / h)
    assert fd.distance(virasoro.coad(X, mu).u.value) < 1e-5


def test_energy_shift_of_zero_potential():
    # -2 psi'' + psi / 2 = 0 has trace 2 cosh(pi)
    L = virasoro.energy_shift(VirasoroCovector(TrigPoly.zero(), 1.0))
    inv = monodromy_invariant(fundamental_path(L))
    assert abs(inv.trace - 2 * math.cosh(math.pi)) < 1e-6


def test_covector_rejects_wrong_weight():
    from coadjoint.density import Density
    with pytest.raises(ValueError):
        VirasoroCovector(Density(1.0, TrigPoly.zero()))
