"""Ramond and Neveu-Schwarz superalgebras ``Vect(S^1) + R + F_{-1/2}``.

The odd part is a periodic (Ramond) or anti-periodic (Neveu-Schwarz)
-1/2-density. Elements may mix parities; Jacobi residuals are computed on
the homogeneous components.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass


from .density import Density
from .errors import SectorMismatch
from .trig import HalfTrigPoly, TrigPoly, _CircleFunction, integrate_period
from .virasoro import vect_bracket


class Sector(str, enum.Enum):
    RAMOND = "ramond"
    NEVEU_SCHWARZ = "ns"

    @property
    def carrier(self):
        return TrigPoly if self is Sector.RAMOND else HalfTrigPoly

    @classmethod
    def parse(cls, name) -> "Sector":
        if isinstance(name, Sector):
            return name
        aliases = {"r": "ramond", "neveu_schwarz": "ns", "neveu-schwarz": "ns"}
        return cls(aliases.get(str(name).lower(), str(name).lower()))


def _unwrap(f):
    return f.value if isinstance(f, Density) else f


@dataclass(frozen=True)
class SuperElement:
    X: TrigPoly
    alpha: float
    xi: _CircleFunction
    sector: Sector

    def __post_init__(self):
        sector = Sector.parse(self.sector)
        object.__setattr__(self, "sector", sector)
        xi = _unwrap(self.xi)
        xi = sector.carrier.zero() if xi is None else xi
        if not isinstance(xi, sector.carrier):
            raise SectorMismatch(f"odd part must be {sector.carrier.__name__} in the {sector.value} sector")
        object.__setattr__(self, "xi", xi)

    @classmethod
    def even(cls, X, alpha=0.0, sector=Sector.RAMOND):
        return cls(X, alpha, None, sector)

    @classmethod
    def odd(cls, xi, sector=Sector.RAMOND):
        return cls(TrigPoly.zero(), 0.0, xi, sector)

    def even_part(self):
        return SuperElement(self.X, self.alpha, None, self.sector)

    def odd_part(self):
        return SuperElement(TrigPoly.zero(), 0.0, self.xi, self.sector)

    def __add__(self, other):
        _check_sector(self, other)
        return SuperElement(self.X + other.X, self.alpha + other.alpha,
                            self.xi + other.xi, self.sector)

    def __mul__(self, k: float):
        return SuperElement(self.X * k, self.alpha * k, self.xi * k, self.sector)

    __rmul__ = __mul__

    def norm(self) -> float:
        return max(self.X.max_coeff(), abs(self.alpha), self.xi.max_coeff())


@dataclass(frozen=True)
class SuperCovector:
    u: TrigPoly
    c: float
    phi: _CircleFunction
    sector: Sector

    def __post_init__(self):
        sector = Sector.parse(self.sector)
        object.__setattr__(self, "sector", sector)
        object.__setattr__(self, "u", _unwrap(self.u))
        phi = _unwrap(self.phi)
        phi = sector.carrier.zero() if phi is None else phi
        if not isinstance(phi, sector.carrier):
            raise SectorMismatch("3/2-density carrier does not match the sector")
        object.__setattr__(self, "phi", phi)

    def pair(self, B: SuperElement) -> float:
        """``int u X_B + c alpha_B + int phi xi_B``."""
        return (integrate_period(self.u * B.X) + self.c * B.alpha
                + integrate_period(self.phi * B.xi))


def _check_sector(*items):
    sectors = {it.sector for it in items}
    if len(sectors) > 1:
        raise SectorMismatch("all arguments must belong to the same sector")


def lie_half(X: TrigPoly, xi):
    """``L_X`` on -1/2-densities: ``X xi' - (1/2) X' xi``."""
    return X * xi.derivative() - 0.5 * (X.derivative() * xi)


def central_cocycle(A: SuperElement, B: SuperElement) -> float:
    """``Omega = int (X' Y'' + 2 xi' eta') dx``."""
    return integrate_period(A.X.derivative() * B.X.derivative(2)
                            + 2.0 * (A.xi.derivative() * B.xi.derivative()))


def printed_central_cocycle(A: SuperElement, B: SuperElement) -> float:
    """``int (X'' Y' + 2 xi' eta')``, kept only to measure its Jacobi defect."""
    return integrate_period(A.X.derivative(2) * B.X.derivative()
                            + 2.0 * (A.xi.derivative() * B.xi.derivative()))


def super_bracket(A: SuperElement, B: SuperElement, cocycle=central_cocycle) -> SuperElement:
    _check_sector(A, B)
    even = vect_bracket(A.X, B.X) + A.xi * B.xi
    odd = lie_half(A.X, B.xi) - lie_half(B.X, A.xi)
    return SuperElement(even, cocycle(A, B), odd, A.sector)


def osp_cocycle(A: SuperElement, B: SuperElement, odd_shift: float = 4.0,
                odd_sign: float = 1.0) -> float:
    """``int (X''' + X') Y + odd_sign * 2 int (xi'' + odd_shift xi) eta``.

    The defaults evaluate the formula exactly as printed; the
    osp(1|2)-invariant normalisation is ``odd_shift=1/4, odd_sign=-1``.
    """
    _check_sector(A, B)
    if A.sector is not Sector.NEVEU_SCHWARZ:
        raise SectorMismatch("the osp(1|2)-equivariant cocycle lives on the Neveu-Schwarz sector")
    even = integrate_period((A.X.derivative(3) + A.X.derivative()) * B.X)
    odd = integrate_period((A.xi.derivative(2) + odd_shift * A.xi) * B.xi)
    return even + 2.0 * odd_sign * odd


def osp_generators() -> list[SuperElement]:
    ns = Sector.NEVEU_SCHWARZ
    return [SuperElement.even(TrigPoly.constant(1.0), sector=ns),
            SuperElement.even(TrigPoly.sin_mode(1), sector=ns),
            SuperElement.even(TrigPoly.cos_mode(1), sector=ns),
            SuperElement.odd(HalfTrigPoly.sin_mode(0), sector=ns),
            SuperElement.odd(HalfTrigPoly.cos_mode(0), sector=ns)]


# -- graded Jacobi ------------------------------------------------------------

def _homogeneous(A: SuperElement):
    return [(0, A.even_part()), (1, A.odd_part())]


def _difference(A: SuperElement, B: SuperElement) -> float:
    return max(A.X.distance(B.X), abs(A.alpha - B.alpha), A.xi.distance(B.xi))


def super_jacobi_residual(A: SuperElement, B: SuperElement, C: SuperElement,
                          cocycle=central_cocycle) -> float:
    """Max-norm of ``sum_cyclic (-1)^{|A||C|} [A, [B, C]]`` over homogeneous parts."""
    _check_sector(A, B, C)
    br = lambda P, Q: super_bracket(P, Q, cocycle)
    zero = SuperElement(TrigPoly.zero(), 0.0, None, A.sector)
    total = zero
    for (pa, a), (pb, b), (pc, c) in itertools.product(
            _homogeneous(A), _homogeneous(B), _homogeneous(C)):
        terms = (((-1) ** (pa * pc)) * br(a, br(b, c))
                 + ((-1) ** (pb * pa)) * br(b, br(c, a))
                 + ((-1) ** (pc * pb)) * br(c, br(a, b)))
        total = total + terms
    return _difference(total, zero)


def graded_antisymmetry_residual(A: SuperElement, B: SuperElement) -> float:
    """``[A, B] + (-1)^{|A||B|} [B, A]`` over homogeneous parts."""
    zero = SuperElement(TrigPoly.zero(), 0.0, None, A.sector)
    total = zero
    for (pa, a), (pb, b) in itertools.product(_homogeneous(A), _homogeneous(B)):
        total = total + super_bracket(a, b) + ((-1) ** (pa * pb)) * super_bracket(b, a)
    return _difference(total, zero)


# -- coadjoint action ------------------------------------------------------

# coefficients of: X u', X' u, c X''', xi phi', xi' phi, X phi', X' phi, u xi, c xi''
SUPER_COAD_COEFFS = (1.0, 2.0, -1.0, 0.5, 1.5, 1.0, 1.5, 1.0, -2.0)


def super_coad(A: SuperElement, mu: SuperCovector, coeffs=None) -> SuperCovector:
    """Coadjoint action on ``F_2 + R + F_{3/2}``; central output is 0.

    ``<ad*_A mu, B> = -(-1)^{|A||B|} <mu, [A, B]>`` for homogeneous A, B; on
    ``A = (0, xi)``, ``mu = (u, c, 0)`` the 3/2-component is the
    Sturm-Liouville operator ``(-2c d^2 + u) xi``.
    """
    _check_sector(A, mu)
    k = SUPER_COAD_COEFFS if coeffs is None else coeffs
    X, xi, u, phi, c = A.X, A.xi, mu.u, mu.phi, mu.c
    du = (k[0] * (X * u.derivative()) + k[1] * (X.derivative() * u)
          + k[2] * c * X.derivative(3)
          + k[3] * (xi * phi.derivative()) + k[4] * (xi.derivative() * phi))
    dphi = (k[5] * (X * phi.derivative()) + k[6] * (X.derivative() * phi)
            + k[7] * (u * xi) + k[8] * c * xi.derivative(2))
    return SuperCovector(du, 0.0, dphi, A.sector)


def super_duality_residual(A: SuperElement, mu: SuperCovector, B: SuperElement,
                           coeffs=None) -> float:
    """``max |<ad*_a mu, b> + (-1)^{|a||b|} <mu, [a, b]>|`` over homogeneous parts."""
    worst = 0.0
    for (pa, a), (pb, b) in itertools.product(_homogeneous(A), _homogeneous(B)):
        lhs = super_coad(a, mu, coeffs).pair(b)
        rhs = ((-1) ** (pa * pb)) * mu.pair(super_bracket(a, b))
        worst = max(worst, abs(lhs + rhs))
    return worst
