"""Tensor densities ``a(x) (dx)^lam`` on the circle."""

from __future__ import annotations

import numpy as np

from .config import settings
from .diffeo import CircleDiffeo, invert
from .errors import UnsupportedCarrier, WeightMismatch
from .trig import (HalfTrigPoly, QuadratureGrid, TrigPoly, _CircleFunction,
                   function_from_dict, integrate_period, project)


class Density:
    __slots__ = ("weight", "value")

    def __init__(self, weight: float, value: _CircleFunction):
        if not isinstance(value, _CircleFunction):
            raise TypeError("density value must be a TrigPoly or HalfTrigPoly")
        self.weight = float(weight)
        self.value = value

    @property
    def antiperiodic(self) -> bool:
        return isinstance(self.value, HalfTrigPoly)

    def __add__(self, other: "Density"):
        _same_weight(self, other)
        return Density(self.weight, self.value + other.value)

    def __sub__(self, other: "Density"):
        _same_weight(self, other)
        return Density(self.weight, self.value - other.value)

    def __neg__(self):
        return Density(self.weight, -self.value)

    def __mul__(self, other):
        if isinstance(other, Density):
            return Density(self.weight + other.weight, self.value * other.value)
        return Density(self.weight, self.value * other)

    __rmul__ = __mul__

    def allclose(self, other: "Density", tol: float | None = None) -> bool:
        return (abs(self.weight - other.weight) <= settings().eps_coeff
                and self.value.allclose(other.value, tol))

    def to_dict(self) -> dict:
        return {"lambda": self.weight, "antiperiodic": self.antiperiodic,
                "value": self.value.to_dict()}

    @classmethod
    def from_dict(cls, data: dict):
        value = dict(data["value"])
        if data.get("antiperiodic"):
            value["half"] = True
        return cls(data["lambda"], function_from_dict(value))

    def __repr__(self):
        return f"Density(weight={self.weight:g}, value={self.value!r})"


def _same_weight(a: Density, b: Density):
    if abs(a.weight - b.weight) > settings().eps_coeff:
        raise WeightMismatch(f"weights {a.weight} and {b.weight} differ")


def transport_samples(g: CircleDiffeo, f: TrigPoly, weight: float,
                      grid: QuadratureGrid | None = None, g_inv: CircleDiffeo | None = None):
    """Samples of ``f o g^{-1} ((g^{-1})')^weight`` on the grid nodes."""
    grid = QuadratureGrid() if grid is None else grid
    h = invert(g) if g_inv is None else g_inv
    x = grid.nodes
    hp = h.d1(x)
    assert np.min(hp) > 0.0
    return f(h(x)) * np.exp(weight * np.log(hp))


def diffeo_act(g: CircleDiffeo, a: Density) -> Density:
    """``g*a = a o g^{-1} ((g^{-1})')^lam``, sampled and projected."""
    if a.antiperiodic:
        raise UnsupportedCarrier("diffeomorphisms act only on periodic densities")
    samples = transport_samples(g, a.value, a.weight)
    value = project(samples)
    value = TrigPoly._raw(value.c, value.s,
                          value.residual + a.value.residual + g.residual)
    return Density(a.weight, value)


def lie_derivative(X: TrigPoly, a: Density) -> Density:
    """``L_X a = X a' + lam X' a``."""
    return Density(a.weight, X * a.value.derivative() + a.weight * (X.derivative() * a.value))


def pairing(a: Density, b: Density) -> float:
    """``int a b dx`` for weights summing to 1."""
    if abs(a.weight + b.weight - 1.0) > settings().eps_coeff:
        raise WeightMismatch(f"pairing needs weights summing to 1, got {a.weight} + {b.weight}")
    if a.antiperiodic != b.antiperiodic:
        raise UnsupportedCarrier("cannot pair periodic with anti-periodic densities")
    return integrate_period(a.value * b.value)
