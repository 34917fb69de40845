"""The extension G of first-order operators ``X d/dx + a``, matrix
Sturm-Liouville operators, the modules ``F_lam + F_{lam+1}`` and the
superalgebra ``S = G + (F_{-1/2} + F_{1/2})``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .diffop import DiffOp, MatrixOp
from .errors import ActionMismatch, NotTangent
from .trig import TrigPoly, integrate_period
from .virasoro import gf_cocycle, vect_bracket

# sign s in the module coupling ``+ s * lam * a' phi``; the printed module uses -1
PRINTED_COUPLING = -1.0
# coupling for which the matrix operators and S are consistent (see matrix_coad)
COADJOINT_COUPLING = 1.0


def _zero():
    return TrigPoly.zero()


@dataclass(frozen=True)
class GElement:
    X: TrigPoly
    a: TrigPoly
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))

    def __add__(self, other):
        return GElement(self.X + other.X, self.a + other.a,
                        tuple(p + q for p, q in zip(self.center, other.center)))

    def __mul__(self, k):
        return GElement(self.X * k, self.a * k, tuple(k * c for c in self.center))

    __rmul__ = __mul__

    def distance(self, other) -> float:
        return max(self.X.distance(other.X), self.a.distance(other.a),
                   max(abs(p - q) for p, q in zip(self.center, other.center)))


def g_cocycles(X, a, Y, b) -> tuple[float, float, float]:
    """``(omega, omega', omega'')`` with ``omega' = int (X'' b - Y'' a)`` and
    ``omega'' = 2 int a b'``."""
    return (gf_cocycle(X, Y),
            integrate_period(X.derivative(2) * b - Y.derivative(2) * a),
            2.0 * integrate_period(a * b.derivative()))


def g_bracket(A: GElement, B: GElement) -> GElement:
    return GElement(vect_bracket(A.X, B.X),
                    A.X * B.a.derivative() - B.X * A.a.derivative(),
                    g_cocycles(A.X, A.a, B.X, B.a))


def g_jacobi_residual(A: GElement, B: GElement, C: GElement) -> float:
    total = (g_bracket(A, g_bracket(B, C)) + g_bracket(B, g_bracket(C, A))
             + g_bracket(C, g_bracket(A, B)))
    return total.distance(GElement(_zero(), _zero()))


# -- the modules F_lam + F_{lam+1} --------------------------------------------

@dataclass(frozen=True)
class DensityPair:
    phi: TrigPoly
    psi: TrigPoly
    lam: float

    def distance(self, other) -> float:
        return max(self.phi.distance(other.phi), self.psi.distance(other.psi))

    def __sub__(self, other):
        return DensityPair(self.phi - other.phi, self.psi - other.psi, self.lam)


def t_operator(A: GElement, lam: float, coupling: float = PRINTED_COUPLING) -> MatrixOp:
    """``T^(lam)_A`` as a matrix operator on ``(phi, psi)``."""
    X, ap = A.X, A.a.derivative()
    return MatrixOp([[DiffOp.lie_derivative(X, lam), DiffOp([0.0])],
                     [DiffOp([coupling * lam * ap]), DiffOp.lie_derivative(X, lam + 1.0)]])


def t_action(A: GElement, p: DensityPair, coupling: float = PRINTED_COUPLING) -> DensityPair:
    """``(L_X phi, L_X psi + coupling * lam * a' phi)``; the default is ``-lam a' phi``."""
    phi, psi = t_operator(A, p.lam, coupling)((p.phi, p.psi))
    return DensityPair(phi, psi, p.lam)


# -- matrix Sturm-Liouville operators -------------------------------------

@dataclass(frozen=True)
class MatrixSL:
    u: TrigPoly
    v: TrigPoly
    c: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(float(x) for x in self.c))

    def operator(self) -> MatrixOp:
        c1, c2, c3 = self.c
        return MatrixOp([[DiffOp([self.u, 0.0, -2.0 * c1]), DiffOp([self.v, 2.0 * c2])],
                         [DiffOp([self.v, -2.0 * c2]), DiffOp([4.0 * c3])]])

    def apply(self, phi: TrigPoly, alpha: TrigPoly):
        """``L (phi, alpha)`` for ``phi`` in F_{-1/2}, ``alpha`` in F_{1/2}."""
        return self.operator()((phi, alpha))

    def pair(self, B: GElement) -> float:
        """``int u Y + int v b + c . beta``."""
        return (integrate_period(self.u * B.X) + integrate_period(self.v * B.a)
                + float(np.dot(self.c, B.center)))

    def to_dict(self) -> dict:
        return {"u": self.u.to_dict(), "v": self.v.to_dict(), "c": list(self.c)}

    @classmethod
    def from_dict(cls, data: dict):
        return cls(TrigPoly.from_dict(data["u"]), TrigPoly.from_dict(data["v"]),
                   tuple(data.get("c", (0.0, 0.0, 0.0))))


def matrix_coad_closed(A: GElement, L: MatrixSL) -> tuple[TrigPoly, TrigPoly]:
    """``du = X u' + 2 X' u - c1 X''' + v a' + c2 a''``,
    ``dv = X v' + X' v - c2 X'' + 2 c3 a'``."""
    X, a = A.X, A.a
    c1, c2, c3 = L.c
    du = (X * L.u.derivative() + 2.0 * (X.derivative() * L.u) - c1 * X.derivative(3)
          + L.v * a.derivative() + c2 * a.derivative(2))
    dv = (X * L.v.derivative() + X.derivative() * L.v - c2 * X.derivative(2)
          + 2.0 * c3 * a.derivative())
    return du, dv


def matrix_commutator(A: GElement, L: MatrixSL, coupling: float = COADJOINT_COUPLING) -> MatrixOp:
    """``T^(1/2)_A o L - L o T^(-1/2)_A`` with the target ordered (F_{3/2}, F_{1/2}).

    On the target the 3/2-component is the ``psi`` slot of ``T^(1/2)``, so
    the coupling ``coupling * (1/2) a'`` sits in the upper-right corner.
    """
    X, ap = A.X, A.a.derivative()
    t_src = t_operator(A, -0.5, coupling)
    t_tgt = MatrixOp([[DiffOp.lie_derivative(X, 1.5), DiffOp([0.5 * coupling * ap])],
                      [DiffOp([0.0]), DiffOp.lie_derivative(X, 0.5)]])
    op = L.operator()
    return (t_tgt @ op) - (op @ t_src)


def matrix_coad(A: GElement, L: MatrixSL, tol: float = 1e-10) -> tuple[TrigPoly, TrigPoly]:
    """Coadjoint action of G on matrix operators, returned as ``(du, dv)``.

    Computed by the closed form and checked against the operator commutator,
    which must be the multiplication matrix ``[[du, dv], [dv, 0]]``.
    """
    du, dv = matrix_coad_closed(A, L)
    comm = matrix_commutator(A, L)
    leftover = comm.max_coeff_above(0)
    if leftover > tol:
        raise NotTangent(f"commutator keeps derivative terms of size {leftover:.3e}")
    expected = [[du, dv], [dv, _zero()]]
    gap = max(comm[i, j].coeff(0).distance(expected[i][j]) for i in range(2) for j in range(2))
    if gap > tol:
        raise ActionMismatch(f"operator commutator and closed form differ by {gap:.3e}")
    return du, dv


def matrix_duality_residual(A: GElement, L: MatrixSL, B: GElement) -> float:
    du, dv = matrix_coad(A, L)
    lhs = integrate_period(du * B.X) + integrate_period(dv * B.a)
    return abs(lhs + L.pair(g_bracket(A, B)))


def self_adjointness_residual(L: MatrixSL, p, q) -> float:
    """``|<L p, q> - <p, L q>|`` for ``p, q`` in F_{-1/2} + F_{1/2}."""
    Lp, Lq = L.apply(*p), L.apply(*q)
    lhs = integrate_period(Lp[0] * q[0] + Lp[1] * q[1])
    rhs = integrate_period(p[0] * Lq[0] + p[1] * Lq[1])
    return abs(lhs - rhs)


# -- the superalgebra S --------------------------------------------------------

@dataclass(frozen=True)
class SElement:
    even: GElement
    phi: TrigPoly
    alpha: TrigPoly

    @classmethod
    def make(cls, X=None, a=None, center=(0.0, 0.0, 0.0), phi=None, alpha=None):
        z = _zero
        return cls(GElement(X or z(), a or z(), center), phi or z(), alpha or z())

    def even_part(self):
        return SElement(self.even, _zero(), _zero())

    def odd_part(self):
        return SElement(GElement(_zero(), _zero()), self.phi, self.alpha)

    def __add__(self, other):
        return SElement(self.even + other.even, self.phi + other.phi, self.alpha + other.alpha)

    def __mul__(self, k):
        return SElement(self.even * k, self.phi * k, self.alpha * k)

    __rmul__ = __mul__

    def distance(self, other) -> float:
        return max(self.even.distance(other.even), self.phi.distance(other.phi),
                   self.alpha.distance(other.alpha))


def odd_cocycles(phi, alpha, psi, beta) -> tuple[float, float, float]:
    """``(2 int phi' psi', -2 int (phi' beta + alpha psi'), 4 int alpha beta)``."""
    return (2.0 * integrate_period(phi.derivative() * psi.derivative()),
            -2.0 * integrate_period(phi.derivative() * beta + alpha * psi.derivative()),
            4.0 * integrate_period(alpha * beta))


def s_bracket(A: SElement, B: SElement, coupling: float = COADJOINT_COUPLING) -> SElement:
    even = g_bracket(A.even, B.even)
    odd_even = GElement(A.phi * B.phi, A.phi * B.alpha + A.alpha * B.phi,
                        odd_cocycles(A.phi, A.alpha, B.phi, B.alpha))
    ta = t_action(A.even, DensityPair(B.phi, B.alpha, -0.5), coupling)
    tb = t_action(B.even, DensityPair(A.phi, A.alpha, -0.5), coupling)
    return SElement(even + odd_even, ta.phi - tb.phi, ta.psi - tb.psi)


def _homogeneous(A: SElement):
    return [(0, A.even_part()), (1, A.odd_part())]


def s_jacobi_residual(A: SElement, B: SElement, C: SElement,
                      coupling: float = COADJOINT_COUPLING) -> float:
    br = lambda P, Q: s_bracket(P, Q, coupling)
    zero = SElement.make()
    total = zero
    for (pa, a), (pb, b), (pc, c) in itertools.product(
            _homogeneous(A), _homogeneous(B), _homogeneous(C)):
        total = (total + ((-1) ** (pa * pc)) * br(a, br(b, c))
                 + ((-1) ** (pb * pa)) * br(b, br(c, a))
                 + ((-1) ** (pc * pb)) * br(c, br(a, b)))
    return total.distance(zero)


def s_coad_odd(phi: TrigPoly, alpha: TrigPoly, L: MatrixSL) -> tuple[TrigPoly, TrigPoly]:
    """``ad*_{(0,0,phi,alpha)}(u, v, c)``: the matrix operator applied to ``(phi, alpha)``.

    ``(-2 c1 phi'' + u phi + v alpha + 2 c2 alpha', -2 c2 phi' + v phi + 4 c3 alpha)``.
    """
    c1, c2, c3 = L.c
    first = (-2.0 * c1 * phi.derivative(2) + L.u * phi + L.v * alpha
             + 2.0 * c2 * alpha.derivative())
    second = -2.0 * c2 * phi.derivative() + L.v * phi + 4.0 * c3 * alpha
    return first, second


def s_odd_duality_residual(A: SElement, L: MatrixSL, B: SElement) -> float:
    """``|<ad*_A mu, B> - <mu, [A, B]>|`` for odd ``A``, ``B`` (graded sign +)."""
    first, second = s_coad_odd(A.phi, A.alpha, L)
    lhs = integrate_period(first * B.phi + second * B.alpha)
    br = s_bracket(A.odd_part(), B.odd_part())
    return abs(lhs - L.pair(br.even))
