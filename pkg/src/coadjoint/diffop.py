"""Scalar linear differential operators with trigonometric coefficients.

``DiffOp([a0, a1, a2])`` is ``a0 + a1 d/dx + a2 d^2/dx^2``. Coefficients are
:class:`TrigPoly`/:class:`HalfTrigPoly` values or plain numbers, so
composition and commutators are exact.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .trig import TrigPoly, _CircleFunction


def _as_function(a):
    if isinstance(a, _CircleFunction):
        return a
    return TrigPoly.constant(float(a))


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    # HalfTrigPoly + TrigPoly can only meet when one side is identically zero
    if type(a) is not type(b):
        if a.max_coeff() == 0.0:
            return b
        if b.max_coeff() == 0.0:
            return a
    return a + b


class DiffOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(_as_function(a) for a in coeffs) or (TrigPoly.zero(),)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else TrigPoly.zero()

    @classmethod
    def multiplication(cls, a):
        return cls([a])

    @classmethod
    def lie_derivative(cls, X: TrigPoly, weight: float):
        """``L_X`` on weight-``weight`` densities: ``X d/dx + weight X'``."""
        return cls([weight * X.derivative(), X])

    def __call__(self, f):
        out = None
        for k, a in enumerate(self.coeffs):
            out = _add(out, a * f.derivative(k))
        return out

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([_add(self.coeff(k), other.coeff(k)) for k in range(n)])

    def __neg__(self):
        return DiffOp([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return compose_ops(self, other)
        return DiffOp([a * other for a in self.coeffs])

    __rmul__ = __mul__

    def max_coeff_above(self, k: int) -> float:
        """Largest coefficient magnitude among derivative orders ``> k``."""
        tail = [a.max_coeff() for a in self.coeffs[k + 1:]]
        return max(tail, default=0.0)

    def __repr__(self):
        return f"DiffOp(order={self.order}, coeffs={list(self.coeffs)!r})"


def compose_ops(A: DiffOp, B: DiffOp) -> DiffOp:
    """``A o B`` via ``d^i (b f) = sum_l C(i,l) b^(l) f^(i-l)``."""
    out: list = [None] * (A.order + B.order + 1)
    for i, a in enumerate(A.coeffs):
        for j, b in enumerate(B.coeffs):
            for l in range(i + 1):
                term = a * b.derivative(l) * comb(i, l)
                k = i - l + j
                out[k] = _add(out[k], term)
    return DiffOp([TrigPoly.zero() if t is None else t for t in out])


def commutator(A: DiffOp, B: DiffOp) -> DiffOp:
    return compose_ops(A, B) - compose_ops(B, A)


class MatrixOp:
    """2x2 matrix of :class:`DiffOp` entries."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = [[e if isinstance(e, DiffOp) else DiffOp([e]) for e in row]
                        for row in entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "MatrixOp") -> "MatrixOp":
        return MatrixOp([[compose_ops(self[i, 0], other[0, j])
                          + compose_ops(self[i, 1], other[1, j])
                          for j in range(2)] for i in range(2)])

    def __sub__(self, other):
        return MatrixOp([[self[i, j] - other[i, j] for j in range(2)]
                         for i in range(2)])

    def __call__(self, pair):
        return tuple(_add(self[i, 0](pair[0]), self[i, 1](pair[1])) for i in range(2))

    def max_coeff_above(self, k: int) -> float:
        return float(np.max([[self[i, j].max_coeff_above(k) for j in range(2)]
                             for i in range(2)]))
