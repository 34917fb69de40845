"""Sturm-Liouville operators ``a d^2/dx^2 + u(x)`` acting F_{-1/2} -> F_{3/2}.

The second-derivative coefficient ``a`` is stored explicitly; the Virasoro
covector ``(u, c)`` corresponds to ``a = -2c``. Solutions of ``L psi = 0``
are integrated with fixed-step RK4 on the first-order system for
``(psi, psi')``; step matrices are built in one vectorised pass and combined
with a parallel prefix product.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import virasoro
from .config import settings
from .density import Density
from .diffeo import CircleDiffeo, invert, invert_points
from .diffop import DiffOp, compose_ops
from .errors import NotPeriodic, NotSturmLiouville, NotTangent, StepCountTooSmall
from .jets import conjugate_coefficients
from .trig import QuadratureGrid, TrigPoly, project

TWO_PI = 2.0 * math.pi
DEFAULT_STEPS = 4096


@dataclass(frozen=True)
class SturmLiouville:
    a: float
    u: Density

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        if isinstance(self.u, TrigPoly):
            object.__setattr__(self, "u", Density(2.0, self.u))
        if self.u.weight != 2.0 or self.u.antiperiodic:
            raise ValueError("the potential is a periodic weight-2 density")

    @property
    def potential(self) -> TrigPoly:
        return self.u.value

    @property
    def central_charge(self) -> float:
        return -0.5 * self.a

    def as_diffop(self) -> DiffOp:
        return DiffOp([self.potential, 0.0, self.a])

    def to_dict(self) -> dict:
        return {"a": self.a, "u": self.potential.to_dict()}

    @classmethod
    def from_dict(cls, data: dict):
        if "a" in data:
            a = data["a"]
        elif "c" in data:
            a = -2.0 * data["c"]
        else:
            raise KeyError("operator JSON needs 'a' (or the central charge 'c')")
        return cls(a, TrigPoly.from_dict(data.get("u", {})))


def sl_from_covector(mu: "virasoro.VirasoroCovector") -> SturmLiouville:
    """``(u, c) -> -2c d^2/dx^2 + u``."""
    return SturmLiouville(-2.0 * mu.c, mu.u.value)


def covector_from_sl(L: SturmLiouville) -> "virasoro.VirasoroCovector":
    return virasoro.VirasoroCovector(L.u, -0.5 * L.a)


# -- Diff(S^1) and Vect(S^1) actions -----------------------------------------

def sl_diffeo_act_closed(g: CircleDiffeo, L: SturmLiouville) -> SturmLiouville:
    """``u o h (h')^2 + (a/2) S(h)`` with ``h = g^{-1}``."""
    h = invert(g)
    x = QuadratureGrid().nodes
    s = virasoro.schwarzian_at(h, x)
    samples = L.potential(h(x)) * h.d1(x) ** 2 + 0.5 * L.a * s
    return SturmLiouville(L.a, project(samples))


def sl_diffeo_act(g: CircleDiffeo, L: SturmLiouville) -> SturmLiouville:
    """Conjugate ``L`` by the density actions: ``g*_{3/2} o L o (g*_{-1/2})^{-1}``.

    Coefficients of the conjugated operator are read off pointwise through
    jets; the first-order coefficient must vanish and the leading one must
    stay ``a``.
    """
    x = QuadratureGrid().nodes
    coeffs = [L.potential, TrigPoly.zero(), TrigPoly.constant(L.a)]
    c0, c1, c2 = conjugate_coefficients(coeffs, g, -0.5, 1.5, x, invert_points)
    scale = 1.0 + abs(L.a) + L.potential.max_coeff()
    tol = 10.0 * settings().eps_proj * scale
    drift = max(np.max(np.abs(c1)), np.max(np.abs(c2 - L.a)))
    if drift > tol:
        raise NotSturmLiouville(f"conjugation left derivative terms of size {drift:.3e}")
    return SturmLiouville(L.a, project(c0))


def sl_vect_act(X: TrigPoly, L: SturmLiouville) -> Density:
    """``L_X^{3/2} o L - L o L_X^{-1/2}``, which must be a multiplication operator."""
    op = L.as_diffop()
    comm = (compose_ops(DiffOp.lie_derivative(X, 1.5), op)
            - compose_ops(op, DiffOp.lie_derivative(X, -0.5)))
    leftover = comm.max_coeff_above(0)
    if leftover > 1e-10:
        raise NotTangent(f"commutator keeps derivative terms of size {leftover:.3e}")
    return Density(2.0, comm.coeff(0))


def _coeff_vector(f: TrigPoly, n: int) -> np.ndarray:
    c, s = f.padded(n + 1)
    return np.concatenate([c[:n + 1], s[1:n + 1]])


def _from_vector(v: np.ndarray, n: int) -> TrigPoly:
    return TrigPoly(v[:n + 1], np.concatenate([[0.0], v[n + 1:]]))


def sl_flow_transport(X: TrigPoly, L: SturmLiouville, t: float,
                      degree: int | None = None) -> SturmLiouville:
    """Transport ``L`` along ``flow(X, t)`` by integrating the algebra action.

    Solves ``du/dt = -ad*_X (u, c)`` (``virasoro.coad``) exactly on the
    coefficient space truncated at ``degree``, via a matrix exponential of
    the affine generator. This is independent of the group-side conjugation
    in :func:`sl_diffeo_act` and agrees with it for ``g = flow(X, t)``.
    """
    n = settings().n_max if degree is None else degree
    dim = 2 * n + 1
    c = -0.5 * L.a
    gen = np.zeros((dim + 1, dim + 1))
    eye = np.eye(dim)
    for k in range(dim):
        mu = virasoro.VirasoroCovector(_from_vector(eye[k], n), 0.0)
        gen[:dim, k] = -_coeff_vector(virasoro.coad(X, mu).u.value, n)
    shift = virasoro.coad(X, virasoro.VirasoroCovector(TrigPoly.zero(), c)).u.value
    gen[:dim, dim] = -_coeff_vector(shift, n)
    state = np.append(_coeff_vector(L.potential, n), 1.0)
    out = expm(t * gen) @ state
    return SturmLiouville(L.a, _from_vector(out[:dim], n).trim(1e-15))


# -- fundamental solutions --------------------------------------------------

def _rk4_step_matrices(A, x0: np.ndarray, h: float) -> np.ndarray:
    """Per-step RK4 propagators for ``Y' = A(x) Y`` (``A`` vectorised)."""
    A1, A2, A4 = A(x0), A(x0 + 0.5 * h), A(x0 + h)
    n = A1.shape[-1]
    eye = np.eye(n)
    K1 = A1
    K2 = A2 @ (eye + 0.5 * h * K1)
    K3 = A2 @ (eye + 0.5 * h * K2)
    K4 = A4 @ (eye + h * K3)
    return eye + (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4)


def _prefix_products(P: np.ndarray) -> np.ndarray:
    """``out[k] = P[k-1] ... P[0]`` with ``out[0] = I`` (Hillis-Steele scan)."""
    T = P.copy()
    offset = 1
    while offset < len(T):
        nxt = T.copy()
        nxt[offset:] = T[offset:] @ T[:-offset]
        T = nxt
        offset *= 2
    eye = np.broadcast_to(np.eye(P.shape[-1]), (1,) + P.shape[1:])
    return np.concatenate([eye, T])


def _sl_generator(L: SturmLiouville):
    u = L.potential
    a = L.a

    def A(x):
        out = np.zeros(np.shape(x) + (2, 2))
        out[..., 0, 1] = 1.0
        out[..., 1, 0] = -u(x) / a
        return out
    return A


@dataclass(frozen=True)
class FundamentalPath:
    """``T[j]`` maps ``(psi, psi')(0)`` to ``(psi, psi')(x_j)``."""

    operator: SturmLiouville
    steps: int
    nodes: np.ndarray = field(repr=False)
    matrices: np.ndarray = field(repr=False)
    wronskian_drift: float = 0.0

    @property
    def monodromy(self) -> np.ndarray:
        return self.matrices[-1]


def fundamental_path(L: SturmLiouville, steps: int = DEFAULT_STEPS) -> FundamentalPath:
    if L.a == 0.0:
        raise NotSturmLiouville("monodromy needs a nonzero second-derivative coefficient")
    h = TWO_PI / steps
    x = h * np.arange(steps)
    P = _rk4_step_matrices(_sl_generator(L), x, h)
    T = _prefix_products(P)
    drift = float(np.max(np.abs(np.linalg.det(T) - 1.0)))
    if drift > settings().wronskian_tol:
        raise StepCountTooSmall(
            f"Wronskian drift {drift:.3e} at {steps} steps exceeds {settings().wronskian_tol:.1e}")
    return FundamentalPath(L, steps, h * np.arange(steps + 1), T, drift)


class MonodromyClass(str, enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class MonodromyInvariant:
    trace: float
    lift_index: int
    conj_class: MonodromyClass

    def to_dict(self) -> dict:
        return {"trace": self.trace, "lift_index": self.lift_index,
                "class": self.conj_class.value}


def classify_trace(trace: float, tol: float = 1e-6) -> MonodromyClass:
    if abs(abs(trace) - 2.0) <= tol:
        return MonodromyClass.PARABOLIC
    return MonodromyClass.ELLIPTIC if abs(trace) < 2.0 else MonodromyClass.HYPERBOLIC


def _displacements(path: FundamentalPath, directions: int) -> np.ndarray | None:
    """``(theta(0) - theta(2 pi)) / pi`` of the Pruefer angle, per initial direction."""
    th0 = np.linspace(0.0, math.pi, directions, endpoint=False)
    v = np.stack([np.cos(th0), np.sin(th0)])
    traj = path.matrices @ v
    theta = np.arctan2(traj[:, 1, :], traj[:, 0, :])
    jumps = np.diff(theta, axis=0)
    jumps = (jumps + math.pi) % (2.0 * math.pi) - math.pi
    if np.max(np.abs(jumps)) >= 0.5 * math.pi:
        return None
    return -np.sum(jumps, axis=0) / math.pi


def lift_index(path: FundamentalPath, directions: int = 64, snap: float = 1e-6) -> int:
    """Integer part of the lifted monodromy's rotation, in half-turns.

    ``d(theta)`` is the clockwise Pruefer rotation (in units of pi) of the
    solution starting in direction ``theta``. If ``floor(d)`` is the same
    for every direction that common value is returned; otherwise ``d``
    crosses an integer at the fixed directions of the monodromy and that
    integer is returned. Both cases are invariant under conjugation of the
    lift, unlike a zero count from a fixed base point.
    """
    d = _displacements(path, directions)
    while d is None:
        path = fundamental_path(path.operator, 2 * path.steps)
        d = _displacements(path, directions)
    near = np.abs(d - np.round(d)) < snap
    d = np.where(near, np.round(d), d)
    fl = np.floor(d)
    if np.all(fl == fl[0]):
        return int(fl[0])
    return int(np.ceil(np.min(d)))


def monodromy_invariant(path: FundamentalPath, trace_tol: float = 1e-6) -> MonodromyInvariant:
    trace = float(np.trace(path.monodromy))
    return MonodromyInvariant(trace, lift_index(path), classify_trace(trace, trace_tol))


# -- homotopy field and projective structure -------------------------------

def homotopy_field(L: SturmLiouville, u_dot, steps: int = DEFAULT_STEPS,
                   tol: float = 1e-6) -> TrigPoly:
    """Vector field ``X`` with ``sl_vect_act(X, L) = u_dot``.

    ``X = psi_1 dpsi_2 - dpsi_1 psi_2`` built from normalised solutions
    (``W = 1``) and their variations; the variations are corrected by a
    traceless ``beta`` with ``[beta, M] = dM`` so ``X`` is periodic whenever
    the deformation keeps the monodromy in its conjugacy class.
    """
    u_dot = u_dot.value if isinstance(u_dot, Density) else u_dot
    u, a = L.potential, L.a

    def A(x):
        out = np.zeros(np.shape(x) + (4, 4))
        out[..., 0, 1] = 1.0
        out[..., 1, 0] = -u(x) / a
        out[..., 2, 3] = 1.0
        out[..., 3, 0] = -u_dot(x) / a
        out[..., 3, 2] = -u(x) / a
        return out

    h = TWO_PI / steps
    x = h * np.arange(steps)
    T = _prefix_products(_rk4_step_matrices(A, x, h))
    init = np.zeros((4, 2))
    init[0, 0] = init[1, 1] = 1.0
    Y = T @ init
    psi, dpsi = Y[:, 0, :], Y[:, 2, :]
    M, dM = Y[-1, 0:2, :], Y[-1, 2:4, :]

    # [beta, M] = dM over traceless beta = [[p, q], [r, -p]]
    basis = [np.array([[1.0, 0.0], [0.0, -1.0]]), np.array([[0.0, 1.0], [0.0, 0.0]]),
             np.array([[0.0, 0.0], [1.0, 0.0]])]
    lhs = np.stack([(b @ M - M @ b).ravel() for b in basis], axis=1)
    coef, *_ = np.linalg.lstsq(lhs, dM.ravel(), rcond=None)
    beta = sum(cf * b for cf, b in zip(coef, basis))
    dpsi = dpsi + psi @ beta

    # Cramer's rule on L_X psi_i = dpsi_i with W = 1
    X = psi[:, 0] * dpsi[:, 1] - dpsi[:, 0] * psi[:, 1]
    gap = abs(X[-1] - X[0])
    if gap > tol * (1.0 + np.max(np.abs(X))):
        raise NotPeriodic(f"homotopy field fails to close up: X(2pi) - X(0) = {gap:.3e}")
    return project(X[:-1])


def projective_sl2_triple(L: SturmLiouville, steps: int = DEFAULT_STEPS,
                          tol: float = 1e-6) -> tuple[TrigPoly, TrigPoly, TrigPoly]:
    """``(psi_1^2, psi_1 psi_2, psi_2^2)`` for normalised solutions ``W = 1``.

    Requires monodromy ``+-I``. With ``e = psi_1^2``, ``h = psi_1 psi_2``,
    ``f = psi_2^2`` the vector-field brackets are ``[e, f] = 2h``,
    ``[h, e] = -e``, ``[h, f] = f``.
    """
    path = fundamental_path(L, steps)
    M = path.monodromy
    if min(np.max(np.abs(M - np.eye(2))), np.max(np.abs(M + np.eye(2)))) > tol:
        raise NotPeriodic("products of solutions close up only for monodromy +-I")
    psi1 = path.matrices[:-1, 0, 0]
    psi2 = path.matrices[:-1, 0, 1]
    return project(psi1 ** 2), project(psi1 * psi2), project(psi2 ** 2)
