import math

import pytest
from conftest import trig_polys
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from coadjoint import extalg
from coadjoint.errors import ActionMismatch, NotTangent
from coadjoint.extalg import DensityPair, GElement, MatrixSL, SElement
from coadjoint.sampling import random_trig
from coadjoint.trig import TrigPoly

centers = st.tuples(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))


@st.composite
def g_elements(draw):
    return GElement(draw(trig_polys(4)), draw(trig_polys(4)), draw(centers))


@st.composite
def matrix_ops(draw):
    return MatrixSL(draw(trig_polys(4)), draw(trig_polys(4)), draw(centers))


@st.composite
def s_elements(draw):
    return SElement(draw(g_elements()), draw(trig_polys(3)), draw(trig_polys(3)))


def rand_g(rng):
    return GElement(random_trig(rng, 5), random_trig(rng, 5), tuple(rng.standard_normal(3)))


def rand_s(rng):
    return SElement(rand_g(rng), random_trig(rng, 4), random_trig(rng, 4))


def test_cocycle_anchors():
    z = TrigPoly.zero()
    w, w1, w2 = extalg.g_cocycles(z, TrigPoly.cos_mode(1), z, TrigPoly.sin_mode(1))
    assert abs(w2 - 2 * math.pi) <= 1e-12 and w == 0.0 and w1 == 0.0
    _, w1, _ = extalg.g_cocycles(TrigPoly.cos_mode(1), z, z, TrigPoly.cos_mode(1))
    assert abs(w1 + math.pi) < 1e-12


@given(g_elements(), g_elements(), g_elements())
def test_g_jacobi(A, B, C):
    assert extalg.g_jacobi_residual(A, B, C) < 1e-10


def test_t_action_anchor():
    # -lam a' phi with lam = -1/2, a = sin, phi = 1
    A = GElement(TrigPoly.zero(), TrigPoly.sin_mode(1))
    out = extalg.t_action(A, DensityPair(TrigPoly.constant(1.0), TrigPoly.zero(), -0.5))
    assert out.phi.max_coeff() == 0.0
    assert out.psi.distance(TrigPoly.cos_mode(1, 0.5)) < 1e-15


@pytest.mark.parametrize("coupling", [extalg.PRINTED_COUPLING, extalg.COADJOINT_COUPLING])
@pytest.mark.parametrize("lam", [-1.0, -0.5, 0.5, 2.0])
def test_t_action_representation(coupling, lam, rng):
    A, B = rand_g(rng), rand_g(rng)
    p = DensityPair(random_trig(rng, 5), random_trig(rng, 5), lam)
    T = lambda E, q: extalg.t_action(E, q, coupling)
    lhs = T(A, T(B, p)) - T(B, T(A, p))
    assert lhs.distance(T(extalg.g_bracket(A, B), p)) < 1e-12


def test_matrix_coad_anchor():
    A = GElement(TrigPoly.zero(), TrigPoly.sin_mode(1))
    du, dv = extalg.matrix_coad(A, MatrixSL(TrigPoly.zero(), TrigPoly.zero(), (0.0, 1.0, 1.0)))
    assert du.distance(TrigPoly.sin_mode(1, -1.0)) < 1e-15
    assert dv.distance(TrigPoly.cos_mode(1, 2.0)) < 1e-15


@given(g_elements(), matrix_ops(), g_elements())
def test_matrix_duality(A, L, B):
    assert extalg.matrix_duality_residual(A, L, B) < 1e-10


@given(matrix_ops(), trig_polys(), trig_polys(), trig_polys(), trig_polys())
def test_self_adjoint(L, p0, p1, q0, q1):
    assert extalg.self_adjointness_residual(L, (p0, p1), (q0, q1)) < 1e-10


def test_printed_coupling_breaks_commutator(rng):
    A, L = rand_g(rng), MatrixSL(random_trig(rng, 4), random_trig(rng, 4), (0.5, 0.7, 0.3))
    du, dv = extalg.matrix_coad_closed(A, L)
    comm = extalg.matrix_commutator(A, L, extalg.PRINTED_COUPLING)
    gap = max(comm[0, 0].coeff(0).distance(du), comm[0, 1].coeff(0).distance(dv),
              comm.max_coeff_above(0))
    assert gap > 1e-3


def test_matrix_coad_detects_bad_closed_form(rng, monkeypatch):
    A, L = rand_g(rng), MatrixSL(random_trig(rng, 4), random_trig(rng, 4), (0.5, 0.7, 0.3))
    monkeypatch.setattr(extalg, "matrix_coad_closed",
                        lambda A, L: (TrigPoly.zero(), TrigPoly.zero()))
    with pytest.raises(ActionMismatch):
        extalg.matrix_coad(A, L)


def test_matrix_coad_detects_non_tangent(rng, monkeypatch):
    A, L = rand_g(rng), MatrixSL(random_trig(rng, 4), random_trig(rng, 4), (0.5, 0.7, 0.3))
    real = extalg.matrix_commutator
    monkeypatch.setattr(extalg, "matrix_commutator",
                        lambda A, L: real(A, L, extalg.PRINTED_COUPLING))
    with pytest.raises((NotTangent, ActionMismatch)):
        extalg.matrix_coad(A, L)


@given(s_elements(), s_elements(), s_elements())
@hsettings(max_examples=5)
def test_s_jacobi(A, B, C):
    assert extalg.s_jacobi_residual(A, B, C) < 1e-10


def test_s_jacobi_fails_with_printed_coupling(rng):
    A, B, C = rand_s(rng), rand_s(rng), rand_s(rng)
    assert extalg.s_jacobi_residual(A, B, C, extalg.PRINTED_COUPLING) > 1e-3


@given(s_elements(), matrix_ops(), s_elements())
def test_s_odd_duality(A, L, B):
    assert extalg.s_odd_duality_residual(A, L, B) < 1e-10


def test_matrix_sl_round_trip():
    L = MatrixSL(TrigPoly.cos_mode(1), TrigPoly.sin_mode(2), (1.0, 2.0, 3.0))
    M = MatrixSL.from_dict(L.to_dict())
    assert M.c == L.c and M.u.distance(L.u) == 0.0 and M.v.distance(L.v) == 0.0
