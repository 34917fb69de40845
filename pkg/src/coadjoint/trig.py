"""Band-limited functions on the circle.

Two carriers are provided:

* :class:`TrigPoly`, a periodic trigonometric polynomial
  ``a0 + sum_k (a_k cos kx + b_k sin kx)``;
* :class:`HalfTrigPoly`, an anti-periodic one built from the half-integer
  modes ``cos((k + 1/2) x)``, ``sin((k + 1/2) x)``.

Both store cosine/sine coefficient arrays indexed by mode; the frequency of
slot ``k`` is ``k + offset`` with ``offset`` 0 or 1/2. Differentiation,
products and period integrals are exact up to floating point roundoff; only
:func:`project` (sampling back onto a finite basis) introduces truncation
error, which it reports.
"""

from __future__ import annotations

import math

import numpy as np

from .config import settings
from .errors import ProjectionOverflow, UnsupportedCarrier

TWO_PI = 2.0 * math.pi
_ROUNDOFF = 5e-15


def _zero_extend(a: np.ndarray, n: int) -> np.ndarray:
    # fresh copy, zero-filled up to length n (np.pad is slow on tiny arrays)
    out = np.zeros(max(n, len(a)))
    out[:len(a)] = a
    return out


class _CircleFunction:
    offset: float = 0.0
    __slots__ = ("c", "s", "residual")

    def __init__(self, c, s, residual: float = 0.0):
        c = np.asarray(c, dtype=float).ravel()
        s = np.asarray(s, dtype=float).ravel()
        n = max(len(c), len(s), 1)
        self.c = _zero_extend(c, n)
        self.s = _zero_extend(s, n)
        if self.offset == 0.0:
            self.s[0] = 0.0
        self.c.flags.writeable = False
        self.s.flags.writeable = False
        self.residual = float(residual)

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, c, s, residual=0.0):
        return cls(c, s, residual)

    @classmethod
    def zero(cls):
        return cls([0.0], [0.0])

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(len(self.c)) + self.offset

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def antiperiodic(self) -> bool:
        return self.offset != 0.0

    def trim(self, tol: float = 0.0):
        """Drop trailing modes whose coefficients are all within ``tol``."""
        mag = np.maximum(np.abs(self.c), np.abs(self.s))
        keep = np.nonzero(mag > tol)[0]
        n = keep[-1] + 1 if len(keep) else 1
        return type(self)._raw(self.c[:n], self.s[:n], self.residual)

    def padded(self, n: int):
        return _zero_extend(self.c, n), _zero_extend(self.s, n)

    # -- evaluation -----------------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        phase = np.multiply.outer(x, self.frequencies)
        return np.cos(phase) @ self.c + np.sin(phase) @ self.s

    def derivative(self, order: int = 1):
        c, s = self.c, self.s
        w = self.frequencies
        for _ in range(order):
            c, s = w * s, -w * c
        return type(self)._raw(c, s)

    def max_coeff(self) -> float:
        return float(max(np.max(np.abs(self.c)), np.max(np.abs(self.s))))

    # -- linear structure -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, _CircleFunction):
            if type(other) is not type(self):
                raise UnsupportedCarrier(
                    f"cannot add {type(self).__name__} and {type(other).__name__}")
            return other
        if np.isscalar(other):
            if self.offset:
                if other == 0:
                    return type(self).zero()
                raise UnsupportedCarrier("constants are not anti-periodic")
            return type(self)([float(other)], [0.0])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.c), len(other.c))
        c1, s1 = self.padded(n)
        c2, s2 = other.padded(n)
        return type(self)._raw(c1 + c2, s1 + s2, self.residual + other.residual)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(-self.c, -self.s, self.residual)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _CircleFunction):
            return product(self, other)
        if np.isscalar(other):
            return type(self)._raw(self.c * other, self.s * other,
                                   abs(other) * self.residual)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return self * (1.0 / other)
        return NotImplemented

    def distance(self, other) -> float:
        """Max-norm distance between coefficient vectors."""
        if type(other) is not type(self):
            raise UnsupportedCarrier("carriers differ")
        n = max(len(self.c), len(other.c))
        c1, s1 = self.padded(n)
        c2, s2 = other.padded(n)
        return float(max(np.max(np.abs(c1 - c2)), np.max(np.abs(s1 - s2))))

    def allclose(self, other, tol: float | None = None) -> bool:
        tol = settings().eps_coeff if tol is None else tol
        return self.distance(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, _CircleFunction):
            return NotImplemented
        return type(other) is type(self) and self.allclose(other)

    __hash__ = None

    # -- complex form on doubled frequencies ----------------------------------
    def _doubled_spectrum(self) -> np.ndarray:
        """Coefficients F_n with f = sum_n F_n exp(i n x / 2), n = -2D-1..2D+1."""
        n_half = 2 * len(self.c) + 1
        spec = np.zeros(2 * n_half + 1, dtype=complex)
        idx = (2 * self.frequencies).astype(int)
        z = 0.5 * (self.c - 1j * self.s)
        spec[n_half + idx] += z
        spec[n_half - idx] += np.conj(z)
        if self.offset == 0.0:
            spec[n_half] = self.c[0]
        return spec


class TrigPoly(_CircleFunction):
    """Real periodic trigonometric polynomial.

    ``TrigPoly(cos=[a0, a1, ...], sin=[0, b1, ...])`` is the raw layout; the
    friendlier :meth:`from_coeffs` takes ``a0`` separately.
    """

    offset = 0.0
    __slots__ = ()

    @classmethod
    def from_coeffs(cls, a0=0.0, cos=(), sin=(), residual=0.0):
        n = max(len(cos), len(sin))
        c = np.zeros(n + 1)
        s = np.zeros(n + 1)
        c[0] = a0
        c[1:len(cos) + 1] = cos
        s[1:len(sin) + 1] = sin
        return cls(c, s, residual)

    @classmethod
    def constant(cls, value: float):
        return cls([float(value)], [0.0])

    @classmethod
    def cos_mode(cls, k: int, amp: float = 1.0):
        c = np.zeros(k + 1)
        c[k] = amp
        return cls(c, np.zeros(k + 1))

    @classmethod
    def sin_mode(cls, k: int, amp: float = 1.0):
        s = np.zeros(k + 1)
        s[k] = amp
        return cls(np.zeros(k + 1), s)

    @property
    def a0(self) -> float:
        return float(self.c[0])

    @property
    def cos_coeffs(self) -> np.ndarray:
        return self.c[1:]

    @property
    def sin_coeffs(self) -> np.ndarray:
        return self.s[1:]

    def to_dict(self) -> dict:
        return {"a0": self.a0, "cos": self.cos_coeffs.tolist(),
                "sin": self.sin_coeffs.tolist()}

    @classmethod
    def from_dict(cls, data: dict):
        if data.get("half"):
            raise UnsupportedCarrier("expected a periodic TrigPoly")
        return cls.from_coeffs(data.get("a0", 0.0), data.get("cos", []),
                               data.get("sin", []))

    def __repr__(self):
        return (f"TrigPoly(a0={self.a0:.6g}, cos={np.round(self.cos_coeffs, 6).tolist()}, "
                f"sin={np.round(self.sin_coeffs, 6).tolist()})")


class HalfTrigPoly(_CircleFunction):
    """Anti-periodic function ``sum_k c_k cos((k+1/2)x) + s_k sin((k+1/2)x)``."""

    offset = 0.5
    __slots__ = ()

    @classmethod
    def from_coeffs(cls, cos=(), sin=(), residual=0.0):
        return cls(cos, sin, residual)

    @classmethod
    def cos_mode(cls, k: int, amp: float = 1.0):
        """``amp * cos((k + 1/2) x)``."""
        c = np.zeros(k + 1)
        c[k] = amp
        return cls(c, np.zeros(k + 1))

    @classmethod
    def sin_mode(cls, k: int, amp: float = 1.0):
        s = np.zeros(k + 1)
        s[k] = amp
        return cls(np.zeros(k + 1), s)

    @property
    def cos_coeffs(self) -> np.ndarray:
        return self.c

    @property
    def sin_coeffs(self) -> np.ndarray:
        return self.s

    def to_dict(self) -> dict:
        return {"half": True, "cos": self.c.tolist(), "sin": self.s.tolist()}

    @classmethod
    def from_dict(cls, data: dict):
        return cls(data.get("cos", [0.0]), data.get("sin", [0.0]))

    def __repr__(self):
        return (f"HalfTrigPoly(cos={np.round(self.c, 6).tolist()}, "
                f"sin={np.round(self.s, 6).tolist()})")


def function_from_dict(data: dict):
    return HalfTrigPoly.from_dict(data) if data.get("half") else TrigPoly.from_dict(data)


def derivative(f, order: int = 1):
    return f.derivative(order)


def product(f: _CircleFunction, g: _CircleFunction):
    """Exact product by convolution of the doubled-frequency spectra."""
    spec = np.convolve(f._doubled_spectrum(), g._doubled_spectrum())
    centre = len(spec) // 2
    half = (f.offset + g.offset) % 1.0 != 0.0
    cls = HalfTrigPoly if half else TrigPoly
    both_half = f.offset != 0.0 and g.offset != 0.0
    n_modes = len(f.c) + len(g.c) - (0 if both_half else 1)
    idx = 2 * (np.arange(n_modes) + cls.offset)
    z = spec[centre + idx.astype(int)]
    c = 2.0 * z.real
    s = -2.0 * z.imag
    if not half:
        c[0] = z[0].real
        s[0] = 0.0
    residual = 0.0
    if f.residual or g.residual:
        residual = f.residual * g.max_coeff() + g.residual * f.max_coeff()
    return cls._raw(c, s, residual)


def integrate_period(f: _CircleFunction) -> float:
    """Exact integral over [0, 2 pi] of a periodic function."""
    if not isinstance(f, TrigPoly):
        raise UnsupportedCarrier("integrate_period needs a periodic TrigPoly")
    return TWO_PI * f.a0


class QuadratureGrid:
    """Equispaced nodes ``2 pi j / M`` with trapezoid weights ``2 pi / M``."""

    def __init__(self, size: int | None = None):
        size = settings().grid_size if size is None else int(size)
        if size < 2 or size & (size - 1):
            raise ValueError(f"grid size must be a power of two, got {size}")
        self.size = size
        self.nodes = TWO_PI * np.arange(size) / size
        self.weight = TWO_PI / size

    def integrate(self, samples) -> float:
        return float(np.sum(samples) * self.weight)

    def sample(self, f) -> np.ndarray:
        return f(self.nodes)


def project(samples, n_max: int | None = None, check: bool = True) -> TrigPoly:
    """Project equispaced periodic samples onto modes ``0..n_max``.

    The residual recorded on the result is the l1 mass of the discarded
    modes, which bounds the sup-norm truncation error.
    """
    cfg = settings()
    n_max = cfg.n_max if n_max is None else n_max
    samples = np.asarray(samples, dtype=float)
    m = len(samples)
    spec = np.fft.rfft(samples) / m
    a = 2.0 * spec.real
    b = -2.0 * spec.imag
    a[0] = spec[0].real
    b[0] = 0.0
    if m % 2 == 0:
        a[-1] = spec[-1].real
        b[-1] = 0.0
    keep = min(n_max + 1, len(a))
    residual = float(np.sum(np.hypot(a[keep:], b[keep:])))
    if check and residual > cfg.eps_proj:
        raise ProjectionOverflow(
            f"projection residual {residual:.3e} exceeds eps_proj={cfg.eps_proj:.1e}")
    # trailing roundoff-level modes are dropped too, and counted
    mag = np.hypot(a[:keep], b[:keep])
    live = np.nonzero(mag > _ROUNDOFF)[0]
    keep_live = live[-1] + 1 if len(live) else 1
    residual += float(np.sum(mag[keep_live:]))
    return TrigPoly._raw(a[:keep_live], b[:keep_live], residual)


def project_function(func, n_max: int | None = None, grid: QuadratureGrid | None = None,
                     check: bool = True) -> TrigPoly:
    """Sample a periodic callable on a quadrature grid and project it."""
    grid = QuadratureGrid() if grid is None else grid
    return project(func(grid.nodes), n_max=n_max, check=check)
