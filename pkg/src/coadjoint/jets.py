"""Truncated Taylor series, vectorised over base points.

Used as an independent route to conjugating differential operators by
density actions: instead of composing symbolic operators we evaluate the
conjugated operator on monomials ``(x - x0)^k / k!`` through jets at each
grid node.
"""

from __future__ import annotations

from math import factorial

import numpy as np


class Jet:
    """Taylor coefficients ``t[..., n]`` of order ``< order`` about a point."""

    __slots__ = ("t",)

    def __init__(self, t):
        self.t = np.asarray(t, dtype=float)

    @property
    def order(self) -> int:
        return self.t.shape[-1]

    @classmethod
    def from_derivatives(cls, derivs):
        """From a list ``[f, f', f'', ...]`` of arrays of equal shape."""
        return cls(np.stack([d / factorial(k) for k, d in enumerate(derivs)], axis=-1))

    @classmethod
    def constant(cls, value, order: int):
        value = np.asarray(value, dtype=float)
        t = np.zeros(value.shape + (order,))
        t[..., 0] = value
        return cls(t)

    def derivative_value(self, m: int) -> np.ndarray:
        return self.t[..., m] * factorial(m)

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.t + other.t)
        t = self.t.copy()
        t[..., 0] += other
        return Jet(t)

    def __sub__(self, other):
        return self + (-other if not isinstance(other, Jet) else Jet(-other.t))

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.t * np.asarray(other)[..., None])
        n = self.order
        out = np.zeros_like(self.t)
        for i in range(n):
            out[..., i:] += self.t[..., i:i + 1] * other.t[..., :n - i]
        return Jet(out)

    __rmul__ = __mul__

    def __pow__(self, lam: float):
        """Real power of a jet with positive constant term (Miller recurrence)."""
        f = self.t
        n = self.order
        b = np.zeros_like(f)
        b[..., 0] = f[..., 0] ** lam
        for m in range(1, n):
            acc = 0.0
            for k in range(1, m + 1):
                acc = acc + (lam * k - (m - k)) * f[..., k] * b[..., m - k]
            b[..., m] = acc / (m * f[..., 0])
        return Jet(b)

    def shift_power(self, k: int) -> "Jet":
        """Integer power ``k >= 0`` by repeated multiplication."""
        out = Jet.constant(np.ones(self.t.shape[:-1]), self.order)
        for _ in range(k):
            out = out * self
        return out


def conjugate_coefficients(coeffs, g, lam_src: float, lam_tgt: float,
                           x0: np.ndarray, invert_points) -> np.ndarray:
    """Coefficients of ``g*_{tgt} o D o (g*_{src})^{-1}`` sampled at ``x0``.

    ``D = sum_k coeffs[k] d^k`` acts from weight ``lam_src`` to ``lam_tgt``;
    ``g*_lam a = a o g^{-1} ((g^{-1})')^lam``. Returns an array of shape
    ``(order + 1, len(x0))``.
    """
    order = len(coeffs) - 1
    n = order + 1
    y0 = invert_points(g, x0)
    dg = [g(y0) - x0, g.d1(y0), g.d2(y0), g.d3(y0)]
    if n + 1 > len(dg):
        extra = [g.p.derivative(m)(y0) for m in range(len(dg), n + 1)]
        dg.extend(extra)
    delta = Jet.from_derivatives(dg[:n])
    gprime = Jet.from_derivatives(dg[1:n + 1])
    weight_src = gprime ** lam_src
    out_scale = dg[1] ** (-lam_tgt)
    coeff_vals = [np.asarray(c(y0)) for c in coeffs]
    result = np.zeros((n, len(x0)))
    for k in range(n):
        phi = delta.shift_power(k) * (1.0 / factorial(k)) * weight_src
        val = sum(coeff_vals[m] * phi.derivative_value(m) for m in range(n))
        result[k] = val * out_scale
    return result
