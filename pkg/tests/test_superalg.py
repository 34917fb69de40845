import math

import pytest
from conftest import half_polys, trig_polys
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from coadjoint import superalg, virasoro
from coadjoint.errors import SectorMismatch
from coadjoint.sampling import random_half, random_trig
from coadjoint.superalg import Sector, SuperCovector, SuperElement
from coadjoint.trig import HalfTrigPoly, TrigPoly

R, NS = Sector.RAMOND, Sector.NEVEU_SCHWARZ
scalars = st.floats(-2, 2)


@st.composite
def elements(draw, sector):
    odd = trig_polys(4) if sector is R else half_polys(3)
    return SuperElement(draw(trig_polys(4)), draw(scalars), draw(odd), sector)


@st.composite
def covectors(draw, sector):
    odd = trig_polys(4) if sector is R else half_polys(3)
    return SuperCovector(draw(trig_polys(4)), draw(scalars), draw(odd), sector)


def test_odd_square_anchor():
    xi = SuperElement.odd(HalfTrigPoly.sin_mode(0), NS)
    br = superalg.super_bracket(xi, xi)
    assert br.X.distance(TrigPoly.from_coeffs(0.5, [-0.5], [])) < 1e-15
    assert abs(br.alpha - math.pi / 2) < 1e-14
    assert br.xi.max_coeff() == 0.0


def test_even_bracket_is_virasoro():
    X, Y = TrigPoly.sin_mode(1), TrigPoly.cos_mode(2)
    br = superalg.super_bracket(SuperElement.even(X), SuperElement.even(Y))
    assert br.X.distance(virasoro.vect_bracket(X, Y)) < 1e-15
    # central part int X' Y'' equals the Gelfand-Fuchs cocycle
    assert abs(br.alpha - virasoro.gf_cocycle(X, Y)) < 1e-12


@pytest.mark.parametrize("sector", [R, NS])
@given(data=st.data())
@hsettings(max_examples=10)
def test_graded_jacobi(sector, data):
    A, B, C = (data.draw(elements(sector)) for _ in range(3))
    assert superalg.super_jacobi_residual(A, B, C) < 1e-10


@pytest.mark.parametrize("sector", [R, NS])
@given(data=st.data())
def test_graded_antisymmetry(sector, data):
    A, B = data.draw(elements(sector)), data.draw(elements(sector))
    assert superalg.graded_antisymmetry_residual(A, B) < 1e-12


@pytest.mark.parametrize("sector", [R, NS])
@given(data=st.data())
def test_duality(sector, data):
    A, B, mu = data.draw(elements(sector)), data.draw(elements(sector)), data.draw(covectors(sector))
    assert superalg.super_duality_residual(A, mu, B) < 1e-10


def test_printed_cocycle_breaks_jacobi(rng):
    els = [SuperElement(random_trig(rng, 4), 0.0, random_trig(rng, 4), R) for _ in range(3)]
    assert superalg.super_jacobi_residual(*els, superalg.printed_central_cocycle) > 1e-3


@pytest.mark.parametrize("sector", [R, NS])
def test_coefficient_sensitivity(sector, rng):
    odd = (lambda: random_trig(rng, 5)) if sector is R else (lambda: random_half(rng, 5))
    A = SuperElement(random_trig(rng, 5), 0.3, odd(), sector)
    mu = SuperCovector(random_trig(rng, 5), 0.8, odd(), sector)
    Bs = [SuperElement(random_trig(rng, 5), 0.0, odd(), sector) for _ in range(5)]
    for i in range(len(superalg.SUPER_COAD_COEFFS)):
        k = list(superalg.SUPER_COAD_COEFFS)
        k[i] *= 1.1
        assert max(superalg.super_duality_residual(A, mu, B, k) for B in Bs) > 1e-3


@pytest.mark.parametrize("sector", [R, NS])
def test_sturm_liouville_display(sector, rng):
    xi = random_trig(rng, 5) if sector is R else random_half(rng, 5)
    u, c = random_trig(rng, 5), -0.7
    out = superalg.super_coad(SuperElement.odd(xi, sector), SuperCovector(u, c, None, sector))
    assert out.phi.distance(-2.0 * c * xi.derivative(2) + u * xi) < 1e-12
    assert out.u.max_coeff() == 0.0


def test_even_restriction(rng):
    X, u, c = random_trig(rng, 5), random_trig(rng, 5), 1.3
    out = superalg.super_coad(SuperElement.even(X, sector=NS), SuperCovector(u, c, None, NS))
    assert out.u.distance(virasoro.coad(X, virasoro.VirasoroCovector(u, c)).u.value) < 1e-12


def test_osp_variants(rng):
    # sin(x/2), cos(x/2) solve xi'' + xi/4 = 0, so only shift 1/4 vanishes on them
    for gen in superalg.osp_generators():
        Y = SuperElement(random_trig(rng, 4), 0.0, random_half(rng, 4), NS)
        assert abs(superalg.osp_cocycle(gen, Y, 0.25, -1.0)) < 1e-12
        assert abs(superalg.osp_cocycle(gen, Y, 0.25, 1.0)) < 1e-12
    odd = superalg.osp_generators()[3]
    Y = SuperElement.odd(HalfTrigPoly.sin_mode(0), NS)
    # printed variant: 2 int (xi'' + 4 xi) xi = 2 (4 - 1/4) pi
    assert abs(superalg.osp_cocycle(odd, Y) - 7.5 * math.pi) < 1e-12


def test_osp_sign_fixed_by_jacobi(rng):
    els = [SuperElement(random_trig(rng, 4), 0.0, random_half(rng, 4), NS) for _ in range(3)]
    good = lambda A, B: superalg.osp_cocycle(A, B, 0.25, -1.0)
    bad = lambda A, B: superalg.osp_cocycle(A, B, 0.25, 1.0)
    assert superalg.super_jacobi_residual(*els, good) < 1e-10
    assert superalg.super_jacobi_residual(*els, bad) > 1e-3


def test_osp_only_on_ns():
    with pytest.raises(SectorMismatch):
        superalg.osp_cocycle(SuperElement.even(TrigPoly.constant(1.0)),
                             SuperElement.even(TrigPoly.constant(1.0)))


def test_sector_mismatch():
    with pytest.raises(SectorMismatch):
        SuperElement(TrigPoly.zero(), 0.0, TrigPoly.cos_mode(1), NS)
    with pytest.raises(SectorMismatch):
        superalg.super_bracket(SuperElement.even(TrigPoly.zero(), sector=R),
                               SuperElement.even(TrigPoly.zero(), sector=NS))


def test_sector_parse():
    assert Sector.parse("neveu-schwarz") is NS
    assert Sector.parse("R") is R
