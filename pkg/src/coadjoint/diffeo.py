"""Orientation-preserving circle diffeomorphisms ``f(x) = x + shift + p(x)``.

Composition, inversion and flows are computed on a quadrature grid and
projected back to a band-limited periodic part; the projection residual is
kept on the result so callers can budget error.
"""

from __future__ import annotations

import math

import numpy as np

from .config import settings
from .errors import NewtonDivergence, NotADiffeomorphism
from .trig import QuadratureGrid, TrigPoly, project

TWO_PI = 2.0 * math.pi


class CircleDiffeo:
    """``f(x) = x + shift + p(x)`` with ``p`` periodic and ``f' > 0``.

    The mean of ``p`` is folded into ``shift`` so the representation is
    unique.
    """

    __slots__ = ("shift", "p", "residual")

    def __init__(self, shift: float = 0.0, p: TrigPoly | None = None,
                 residual: float = 0.0, check: bool = True):
        p = TrigPoly.zero() if p is None else p
        if not isinstance(p, TrigPoly):
            raise TypeError("periodic part must be a TrigPoly")
        self.shift = float(shift) + p.a0
        c = np.array(p.c)
        c[0] = 0.0
        self.p = TrigPoly._raw(c, p.s, p.residual)
        self.residual = float(residual) + p.residual
        if check:
            slope = self.d1(QuadratureGrid().nodes)
            if np.min(slope) <= 0.0:
                raise NotADiffeomorphism(
                    f"f' has minimum {np.min(slope):.3e} on the verification grid")

    @classmethod
    def identity(cls):
        return cls(0.0)

    @classmethod
    def rotation(cls, angle: float):
        return cls(angle)

    def __call__(self, x):
        return np.asarray(x, dtype=float) + self.shift + self.p(x)

    def d1(self, x):
        return 1.0 + self.p.derivative()(x)

    def d2(self, x):
        return self.p.derivative(2)(x)

    def d3(self, x):
        return self.p.derivative(3)(x)

    def distance(self, other: "CircleDiffeo") -> float:
        """Max-norm distance of shifts and periodic coefficients."""
        return max(abs(self.shift - other.shift), self.p.distance(other.p))

    def to_dict(self) -> dict:
        return {"shift": self.shift, "p": self.p.to_dict()}

    @classmethod
    def from_dict(cls, data: dict):
        return cls(data.get("shift", 0.0), TrigPoly.from_dict(data.get("p", {})))

    def __repr__(self):
        return f"CircleDiffeo(shift={self.shift:.6g}, p={self.p!r})"


def identity() -> CircleDiffeo:
    return CircleDiffeo.identity()


def rotation(angle: float) -> CircleDiffeo:
    return CircleDiffeo.rotation(angle)


def _from_samples(nodes, values, residual=0.0) -> CircleDiffeo:
    """Build ``f`` from samples of ``f(x_j) - x_j`` (periodic)."""
    p = project(values)
    return CircleDiffeo(0.0, p, residual)


def compose(g: CircleDiffeo, f: CircleDiffeo) -> CircleDiffeo:
    """``g o f``."""
    grid = QuadratureGrid()
    x = grid.nodes
    fx = f(x)
    # g(f(x)) - x = (f(x) - x) + shift_g + p_g(f(x))
    vals = fx - x + g.shift + g.p(fx)
    return _from_samples(x, vals, f.residual + g.residual)


def invert_points(f: CircleDiffeo, x) -> np.ndarray:
    """Solve ``f(y) = x`` pointwise by safeguarded Newton iteration."""
    cfg = settings()
    x = np.asarray(x, dtype=float)
    y = x - f.shift
    for _ in range(cfg.newton_max_iter):
        step = (f(y) - x) / f.d1(y)
        y = y - step
        if np.max(np.abs(step)) < 1e-15 * (1.0 + np.max(np.abs(x))):
            break
    else:
        err = np.max(np.abs(f(y) - x))
        if not np.isfinite(err) or err > 1e-12:
            raise NewtonDivergence(f"Newton inversion stalled, residual {err:.3e}")
    return y


def invert(f: CircleDiffeo) -> CircleDiffeo:
    x = QuadratureGrid().nodes
    y = invert_points(f, x)
    return _from_samples(x, y - x, f.residual)


def flow(X: TrigPoly, t: float, steps: int | None = None) -> CircleDiffeo:
    """Time-``t`` map of ``dx/dt = X(x)`` by fixed-step RK4 on grid nodes."""
    if steps is None:
        steps = max(1, math.ceil(abs(t) * settings().flow_steps_per_unit))
    x = QuadratureGrid().nodes
    y = x.copy()
    h = t / steps
    for _ in range(steps):
        k1 = X(y)
        k2 = X(y + 0.5 * h * k1)
        k3 = X(y + 0.5 * h * k2)
        k4 = X(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return _from_samples(x, y - x)
