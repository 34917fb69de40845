"""Moyal-Weyl star-product, transvectants and Adler-Gelfand-Dickey fields.

Exact parts (Laurent polynomials in ``(p, q)``, polynomial densities in the
affine chart ``t``) use :class:`fractions.Fraction`. Third-order operators
``d^3 + u d + v`` on the circle use the trigonometric carriers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .config import settings
from .density import Density
from .diffeo import CircleDiffeo, invert, invert_points
from .diffop import DiffOp, compose_ops
from .errors import ActionMismatch, NonIntegerExponent, NotTangent
from .jets import conjugate_coefficients
from .sturm import SturmLiouville
from .trig import QuadratureGrid, TrigPoly, project
from .virasoro import schwarzian_at


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x).limit_denominator(10 ** 12)


def falling(k, i: int):
    """Falling factorial ``k (k-1) ... (k-i+1)``."""
    out = Fraction(1) if isinstance(k, Fraction) else 1
    for r in range(i):
        out *= k - r
    return out


# -- Laurent polynomials on the symplectic plane ---------------------------

class LaurentPoly2:
    """``sum c_ij p^i q^j`` with integer exponents and exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = _frac(c)
            if c:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def monomial(cls, i: int, j: int, c=1):
        return cls({(i, j): c})

    @classmethod
    def p(cls):
        return cls.monomial(1, 0)

    @classmethod
    def q(cls):
        return cls.monomial(0, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly2({(0, 0): other})
        return isinstance(other, LaurentPoly2) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly2):
            k = _frac(other)
            return LaurentPoly2({e: c * k for e, c in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def diff(self, dp: int = 0, dq: int = 0):
        """``d^dp/dp^dp d^dq/dq^dq``."""
        out = {}
        for (i, j), c in self.terms.items():
            k = c * falling(i, dp) * falling(j, dq)
            if k:
                out[(i - dp, j - dq)] = k
        return LaurentPoly2(out)

    def homogeneous_degree(self):
        degs = {i + j for i, j in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def to_json(self) -> list:
        return [[i, j, c.numerator, c.denominator] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({(i, j): Fraction(n, d) for i, j, n, d in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*p^{i}*q^{j}" for (i, j), c in sorted(self.terms.items())]
        return " + ".join(parts)


def moyal_term(F: LaurentPoly2, G: LaurentPoly2, m: int) -> LaurentPoly2:
    """``{F, G}_m = sum_i (-1)^i C(m,i) d_p^{m-i} d_q^i F . d_p^i d_q^{m-i} G``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = LaurentPoly2()
    for i in range(m + 1):
        term = F.diff(m - i, i) * G.diff(i, m - i)
        out = out + term * ((-1) ** i * comb(m, i))
    return out


def poisson(F: LaurentPoly2, G: LaurentPoly2) -> LaurentPoly2:
    return moyal_term(F, G, 1)


@dataclass(frozen=True)
class HbarSeries:
    """``sum_k coeffs[k] hbar^k`` truncated after ``hbar^order``."""

    coeffs: tuple
    order: int

    @classmethod
    def constant(cls, F: LaurentPoly2, order: int):
        return cls((F,) + (LaurentPoly2(),) * order, order)

    def __eq__(self, other):
        return (self.order == other.order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    __hash__ = None

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def star_series(A: HbarSeries, B: HbarSeries) -> HbarSeries:
    order = min(A.order, B.order)
    out = [LaurentPoly2() for _ in range(order + 1)]
    for a, Fa in enumerate(A.coeffs):
        for b, Gb in enumerate(B.coeffs):
            for m in range(order - a - b + 1):
                if Fa.is_zero() or Gb.is_zero():
                    continue
                scale = Fraction(1, 2 ** m * factorial(m))
                out[a + b + m] = out[a + b + m] + moyal_term(Fa, Gb, m) * scale
    return HbarSeries(tuple(out), order)


def star(F: LaurentPoly2, G: LaurentPoly2, K: int) -> HbarSeries:
    """``F * G = sum_m hbar^m {F, G}_m / (2^m m!)`` up to ``hbar^K``."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    return star_series(HbarSeries.constant(F, K), HbarSeries.constant(G, K))


# -- densities in the affine chart and the homogeneous lift --------------------

@dataclass(frozen=True)
class ChartDensity:
    """Polynomial density ``sum_a c_a t^a (dt)^weight`` in the projective chart."""

    coeffs: tuple  # ((a, Fraction), ...) sorted by exponent
    weight: Fraction

    @classmethod
    def make(cls, coeffs: dict, weight):
        clean = tuple(sorted((int(a), _frac(c)) for a, c in coeffs.items() if c))
        return cls(clean, _frac(weight))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def derivative(self, k: int = 1) -> dict:
        out = {}
        for a, c in self.coeffs:
            d = c * falling(a, k)
            if d:
                out[a - k] = d
        return out

    def __add__(self, other):
        out = self.as_dict()
        for a, c in other.coeffs:
            out[a] = out.get(a, 0) + c
        return ChartDensity.make(out, self.weight)

    def __sub__(self, other):
        return self + ChartDensity.make({a: -c for a, c in other.coeffs}, other.weight)

    def is_zero(self) -> bool:
        return not self.coeffs


def _poly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for a, c in f.items():
        for b, d in g.items():
            out[a + b] = out.get(a + b, 0) + c * d
    return out


def _poly_add(f: dict, g: dict, k=1) -> dict:
    out = dict(f)
    for a, c in g.items():
        out[a] = out.get(a, 0) + k * c
    return out


@dataclass(frozen=True)
class MonomialDensity:
    """``t^a (dt)^weight``."""

    exponent: int
    weight: Fraction

    def chart(self) -> ChartDensity:
        return ChartDensity.make({self.exponent: 1}, self.weight)


def lift(phi) -> LaurentPoly2:
    """``phi(t)(dt)^lam -> p^{-2 lam} phi(q/p)``: monomials go to ``q^a p^{-2 lam - a}``."""
    if isinstance(phi, MonomialDensity):
        phi = phi.chart()
    two_lam = 2 * phi.weight
    if two_lam.denominator != 1:
        raise NonIntegerExponent(f"-2*lambda = {-two_lam} is not an integer")
    return LaurentPoly2({(-int(two_lam) - a, a): c for a, c in phi.coeffs})


def chart_lie_derivative(Z: ChartDensity, phi: ChartDensity) -> ChartDensity:
    """``L_Z phi = Z phi' + lam Z' phi`` for a chart vector field ``Z`` (weight -1)."""
    out = _poly_add(_poly_mul(Z.as_dict(), phi.derivative()),
                    _poly_mul(Z.derivative(), phi.as_dict()), phi.weight)
    return ChartDensity.make(out, phi.weight)


def transvectant_coefficients(lam, mu, m: int, crossed: bool = True) -> list:
    """Coefficients ``k_i`` of ``phi^(i) psi^(m-i)`` in the m-th transvectant.

    ``k_i = (-1)^i C(m,i) <2 mu + m - 1>_i <2 lam + m - 1>_{m-i}`` with
    falling factorials ``<k>_i``; this is the projectively equivariant
    choice (``crossed=False`` swaps the weights and is kept for comparison).
    """
    lam, mu = _frac(lam), _frac(mu)
    first, second = (mu, lam) if crossed else (lam, mu)
    return [(-1) ** i * comb(m, i) * falling(2 * first + m - 1, i)
            * falling(2 * second + m - 1, m - i) for i in range(m + 1)]


def transvectant(phi, psi, m: int, crossed: bool = True):
    """Transvectant ``F_lam x F_mu -> F_{lam + mu + m}``.

    Chart densities are handled exactly. Circle densities (:class:`Density`)
    use ``x`` as the projective parameter.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    k = transvectant_coefficients(phi.weight, psi.weight, m, crossed)
    if isinstance(phi, ChartDensity):
        out: dict = {}
        for i, ki in enumerate(k):
            if ki:
                out = _poly_add(out, _poly_mul(phi.derivative(i), psi.derivative(m - i)), ki)
        return ChartDensity.make(out, phi.weight + psi.weight + m)
    val = None
    for i, ki in enumerate(k):
        term = float(ki) * (phi.value.derivative(i) * psi.value.derivative(m - i))
        val = term if val is None else val + term
    return Density(phi.weight + psi.weight + m, val)


def lift_constant(phi: ChartDensity, psi: ChartDensity, m: int):
    """``kappa`` with ``moyal_term(lift phi, lift psi, m) = kappa lift(transvectant)``.

    Returns ``None`` when both sides vanish; raises ``ValueError`` if the two
    sides are not proportional.
    """
    lhs = moyal_term(lift(phi), lift(psi), m)
    rhs = lift(transvectant(phi, psi, m))
    if rhs.is_zero():
        if lhs.is_zero():
            return None
        raise ValueError("transvectant vanishes but the Moyal term does not")
    key, val = next(iter(rhs.terms.items()))
    kappa = lhs.terms.get(key, Fraction(0)) / val
    if lhs != rhs * kappa:
        raise ValueError("lifted transvectant and Moyal term are not proportional")
    return kappa


# -- second-order Lie derivative ------------------------------------------

def second_lie_op(Z: TrigPoly, lam: float, potential=1.0) -> DiffOp:
    """``L^2_Z`` on weight-``lam`` densities as a differential operator.

    ``12 Z d^2 + 6(2 lam + 1) Z' d + 2 lam(2 lam + 1) Z'' + 4 lam(lam - 1) rho Z``
    where ``rho`` is the potential of the projective structure ``4 d^2 + rho``;
    ``rho = 1`` is the standard structure, whose sl2 is ``{1, cos x, sin x}``.
    The first three terms are the m = 2 transvectant with ``Z`` of weight -2.
    """
    rho = potential if isinstance(potential, TrigPoly) else TrigPoly.constant(float(potential))
    zeroth = 2.0 * lam * (2.0 * lam + 1.0) * Z.derivative(2) + 4.0 * lam * (lam - 1.0) * (rho * Z)
    return DiffOp([zeroth, 6.0 * (2.0 * lam + 1.0) * Z.derivative(), 12.0 * Z])


def second_lie(Z, phi: Density, potential=1.0) -> Density:
    Z = Z.value if isinstance(Z, Density) else Z
    return Density(phi.weight, second_lie_op(Z, phi.weight, potential)(phi.value))


# -- third-order operators d^3 + u d + v ----------------------------------------

@dataclass(frozen=True)
class ThirdOrderOp:
    """``d^3 + u d + u'/2 + w``: ``u`` a 2-density, ``w`` a cubic density."""

    u: TrigPoly
    w: TrigPoly

    @property
    def v(self) -> TrigPoly:
        return self.w + 0.5 * self.u.derivative()

    @classmethod
    def from_uv(cls, u: TrigPoly, v: TrigPoly):
        return cls(u, v - 0.5 * u.derivative())

    def as_diffop(self) -> DiffOp:
        return DiffOp([self.v, self.u, 0.0, 1.0])

    def to_dict(self) -> dict:
        return {"u": self.u.to_dict(), "w": self.w.to_dict()}

    @classmethod
    def from_dict(cls, data: dict):
        return cls(TrigPoly.from_dict(data["u"]), TrigPoly.from_dict(data["w"]))


def _order_le_one(comm: DiffOp, tol: float, what: str) -> tuple[TrigPoly, TrigPoly]:
    leftover = comm.max_coeff_above(1)
    if leftover > tol:
        raise NotTangent(f"{what} keeps order >= 2 terms of size {leftover:.3e}")
    return comm.coeff(1), comm.coeff(0)


def third_vect_act(X: TrigPoly, A: ThirdOrderOp, tol: float = 1e-10) -> tuple[TrigPoly, TrigPoly]:
    """``(X u' + 2 X' u + 2 X''', X w' + 3 X' w)``, checked against
    ``L_X^(2) o A - A o L_X^(-1)``."""
    du = X * A.u.derivative() + 2.0 * (X.derivative() * A.u) + 2.0 * X.derivative(3)
    dw = X * A.w.derivative() + 3.0 * (X.derivative() * A.w)
    op = A.as_diffop()
    comm = compose_ops(DiffOp.lie_derivative(X, 2.0), op) - compose_ops(op, DiffOp.lie_derivative(X, -1.0))
    c1, c0 = _order_le_one(comm, tol, "[L_X, A]")
    gap = max(c1.distance(du), c0.distance(dw + 0.5 * du.derivative()))
    if gap > tol:
        raise ActionMismatch(f"commutator and closed form differ by {gap:.3e}")
    return du, dw


def third_diffeo_act_closed(g: CircleDiffeo, A: ThirdOrderOp) -> ThirdOrderOp:
    """``u o h h'^2 + 2 S(h)``, ``w o h h'^3`` with ``h = g^{-1}``."""
    h = invert(g)
    x = QuadratureGrid().nodes
    hx, h1 = h(x), h.d1(x)
    u = project(A.u(hx) * h1 ** 2 + 2.0 * schwarzian_at(h, x))
    w = project(A.w(hx) * h1 ** 3)
    return ThirdOrderOp(u, w)


def third_diffeo_act(g: CircleDiffeo, A: ThirdOrderOp) -> ThirdOrderOp:
    """``g*_2 o A o (g*_{-1})^{-1}``, cross-checked against the closed form."""
    x = QuadratureGrid().nodes
    coeffs = [A.v, A.u, TrigPoly.zero(), TrigPoly.constant(1.0)]
    c0, c1, c2, c3 = conjugate_coefficients(coeffs, g, -1.0, 2.0, x, invert_points)
    scale = 1.0 + A.u.max_coeff() + A.w.max_coeff()
    tol = 10.0 * settings().eps_proj * scale
    drift = max(np.max(np.abs(c2)), np.max(np.abs(c3 - 1.0)))
    if drift > tol:
        raise NotTangent(f"conjugation left order-2 terms of size {drift:.3e}")
    u = project(c1)
    conj = ThirdOrderOp.from_uv(u, project(c0))
    closed = third_diffeo_act_closed(g, A)
    gap = max(conj.u.distance(closed.u), conj.w.distance(closed.w))
    if gap > tol:
        raise ActionMismatch(f"conjugation and closed form differ by {gap:.3e}")
    return conj


def agd_field(kind: str, data, A: ThirdOrderOp, tol: float = 1e-9) -> tuple[TrigPoly, TrigPoly]:
    """Hamiltonian field of the functional ``int X u`` (kind ``"X"``) or
    ``int Z w`` (kind ``"Z"``), returned as ``(du, dv)``.

    Kind ``"Z"`` is the commutator ``L^2_Z o A - A o L^2_Z`` with ``L^2_Z``
    taken relative to the projective structure ``4 d^2 + u`` of ``A``
    itself (weights 2 on the left, -1 on the right); it must have order <= 1.
    """
    data = data.value if isinstance(data, Density) else data
    if kind.upper() == "X":
        du, dw = third_vect_act(data, A)
        return du, dw + 0.5 * du.derivative()
    if kind.upper() != "Z":
        raise ValueError(f"unknown functional kind {kind!r}")
    op = A.as_diffop()
    comm = (compose_ops(second_lie_op(data, 2.0, A.u), op)
            - compose_ops(op, second_lie_op(data, -1.0, A.u)))
    return _order_le_one(comm, tol, "[L^2_Z, A]")


def project_to_sturm(A: ThirdOrderOp) -> SturmLiouville:
    """``d^3 + u d + v -> 4 d^2 + u``."""
    return SturmLiouville(4.0, A.u)
