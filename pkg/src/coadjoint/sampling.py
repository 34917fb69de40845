"""Seeded random inputs for property checks.

All randomness goes through ``numpy.random.Generator(PCG64(seed))``. Random
trigonometric polynomials have i.i.d. normal coefficients scaled by
``1 / (1 + k^2)`` so derivatives stay bounded.
"""

from __future__ import annotations

import numpy as np

from .diffeo import CircleDiffeo
from .trig import HalfTrigPoly, TrigPoly

PRNG_NAME = "numpy.random.PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_trig(rng: np.random.Generator, degree: int = 6, scale: float = 1.0,
                mean: bool = True) -> TrigPoly:
    k = np.arange(1, degree + 1)
    damp = scale / (1.0 + k ** 2)
    a0 = scale * rng.standard_normal() if mean else 0.0
    return TrigPoly.from_coeffs(a0, rng.standard_normal(degree) * damp,
                                rng.standard_normal(degree) * damp)


def random_half(rng: np.random.Generator, degree: int = 6, scale: float = 1.0) -> HalfTrigPoly:
    k = np.arange(degree + 1) + 0.5
    damp = scale / (1.0 + k ** 2)
    return HalfTrigPoly(rng.standard_normal(degree + 1) * damp,
                        rng.standard_normal(degree + 1) * damp)


def random_diffeo(rng: np.random.Generator, degree: int = 3, slope: float = 0.25) -> CircleDiffeo:
    """Random diffeo with ``sup |p'| <= slope`` (bounded via the l1 norm of k|p_k|)."""
    k = np.arange(1, degree + 1)
    a = rng.standard_normal(degree) / (1.0 + k ** 2)
    b = rng.standard_normal(degree) / (1.0 + k ** 2)
    bound = np.sum(k * np.hypot(a, b))
    factor = slope * rng.uniform(0.5, 1.0) / bound
    return CircleDiffeo(rng.uniform(-np.pi, np.pi),
                        TrigPoly.from_coeffs(0.0, a * factor, b * factor))
