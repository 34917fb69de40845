"""The Virasoro algebra and group: cocycles, Schwarzians, coadjoint actions."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .density import Density
from .diffeo import CircleDiffeo
from .trig import QuadratureGrid, TrigPoly, integrate_period, project


class CocycleKind(str, enum.Enum):
    STANDARD = "standard"
    MODIFIED = "modified"


SchwarzianKind = CocycleKind


@dataclass(frozen=True)
class VirasoroElement:
    X: TrigPoly
    alpha: float = 0.0


@dataclass(frozen=True)
class VirasoroCovector:
    u: Density
    c: float = 0.0

    def __post_init__(self):
        if isinstance(self.u, TrigPoly):
            object.__setattr__(self, "u", Density(2.0, self.u))
        if self.u.weight != 2.0 or self.u.antiperiodic:
            raise ValueError("Virasoro covectors carry a periodic weight-2 density")

    def pair(self, a: VirasoroElement) -> float:
        """``<(u, c), (X, alpha)> = int u X + c alpha``."""
        return integrate_period(self.u.value * a.X) + self.c * a.alpha


def _field(a) -> TrigPoly:
    return a.X if isinstance(a, VirasoroElement) else a


def vect_bracket(X: TrigPoly, Y: TrigPoly) -> TrigPoly:
    """``[X, Y] = X Y' - X' Y``."""
    return X * Y.derivative() - X.derivative() * Y


def gf_cocycle(X: TrigPoly, Y: TrigPoly, kind: CocycleKind = CocycleKind.STANDARD) -> float:
    X, Y = _field(X), _field(Y)
    if CocycleKind(kind) is CocycleKind.STANDARD:
        return 0.5 * integrate_period(X.derivative() * Y.derivative(2)
                                      - X.derivative(2) * Y.derivative())
    return integrate_period((X.derivative(3) + X.derivative()) * Y)


def vir_bracket(a: VirasoroElement, b: VirasoroElement,
                kind: CocycleKind = CocycleKind.STANDARD) -> VirasoroElement:
    return VirasoroElement(vect_bracket(a.X, b.X), gf_cocycle(a.X, b.X, kind))


def central_term(X: TrigPoly, c: float, kind: CocycleKind) -> TrigPoly:
    """The cocycle contribution to ``ad*_X (u, c)``."""
    if CocycleKind(kind) is CocycleKind.STANDARD:
        return -c * X.derivative(3)
    return -c * (X.derivative(3) + X.derivative())


def coad(a, mu: VirasoroCovector, kind: CocycleKind = CocycleKind.STANDARD) -> VirasoroCovector:
    """``ad*_X (u, c) = (X u' + 2 X' u + central_term, 0)``."""
    X = _field(a)
    u = mu.u.value
    du = X * u.derivative() + 2.0 * (X.derivative() * u) + central_term(X, mu.c, kind)
    return VirasoroCovector(Density(2.0, du), 0.0)


def _schwarzian_samples(f: CircleDiffeo, x, kind) -> np.ndarray:
    d1, d2, d3 = f.d1(x), f.d2(x), f.d3(x)
    s = d3 / d1 - 1.5 * (d2 / d1) ** 2
    if CocycleKind(kind) is CocycleKind.MODIFIED:
        s = s + 0.5 * (d1 ** 2 - 1.0)
    return s


def schwarzian_at(f: CircleDiffeo, x, kind: CocycleKind = CocycleKind.STANDARD):
    """Pointwise Schwarzian, exact up to roundoff."""
    return _schwarzian_samples(f, np.asarray(x, dtype=float), kind)


def schwarzian(f: CircleDiffeo, kind: CocycleKind = CocycleKind.STANDARD) -> Density:
    x = QuadratureGrid().nodes
    return Density(2.0, project(_schwarzian_samples(f, x, kind)))


def pullback2(f: CircleDiffeo, u: TrigPoly) -> TrigPoly:
    """Weight-2 pullback ``u(f(x)) f'(x)^2``."""
    x = QuadratureGrid().nodes
    return project(u(f(x)) * f.d1(x) ** 2)


def group_coad(f: CircleDiffeo, mu: VirasoroCovector,
               kind: CocycleKind = CocycleKind.STANDARD) -> VirasoroCovector:
    """``(u o f (f')^2 - c S(f), c)``."""
    x = QuadratureGrid().nodes
    samples = mu.u.value(f(x)) * f.d1(x) ** 2 - mu.c * _schwarzian_samples(f, x, kind)
    return VirasoroCovector(Density(2.0, project(samples)), mu.c)


def bott_cocycle(f: CircleDiffeo, g: CircleDiffeo, grid: QuadratureGrid | None = None) -> float:
    """``int log((f o g)') d log g'`` by trapezoid quadrature."""
    grid = QuadratureGrid() if grid is None else grid
    x = grid.nodes
    gx = g(x)
    g1 = g.d1(x)
    log_fg = np.log(f.d1(gx) * g1)
    return grid.integrate(log_fg * g.d2(x) / g1)


def energy_shift(mu: VirasoroCovector):
    """``-2c d^2/dx^2 + u + c/2`` as a Sturm-Liouville operator."""
    from .sturm import SturmLiouville
    return SturmLiouville(-2.0 * mu.c, mu.u.value + 0.5 * mu.c)


__all__ = [
    "CocycleKind", "SchwarzianKind", "VirasoroElement", "VirasoroCovector",
    "vect_bracket", "gf_cocycle", "vir_bracket", "central_term", "coad",
    "schwarzian", "schwarzian_at", "pullback2", "group_coad", "bott_cocycle",
    "energy_shift",
]
