"""Numerical settings shared by every module.

Settings live in a context variable so that ``override`` is safe to use from
concurrent threads or tasks without leaking into other callers.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace

from .errors import ConfigError


@dataclass(frozen=True)
class Settings:
    eps_coeff: float = 1e-12
    eps_proj: float = 1e-9
    n_max: int = 64
    wronskian_tol: float = 1e-8
    newton_max_iter: int = 60
    flow_steps_per_unit: int = 512

    def __post_init__(self):
        if self.n_max < 1 or self.n_max & (self.n_max - 1):
            raise ConfigError(f"n_max must be a power of two, got {self.n_max}")
        for name in ("eps_coeff", "eps_proj", "wronskian_tol"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")

    @property
    def grid_size(self) -> int:
        return 4 * self.n_max


_current: contextvars.ContextVar[Settings] = contextvars.ContextVar(
    "coadjoint_settings", default=Settings()
)


def settings() -> Settings:
    return _current.get()


@contextlib.contextmanager
def override(**changes):
    """Temporarily replace fields of the active settings.

    >>> with override(n_max=128):
    ...     settings().grid_size
    512
    """
    token = _current.set(replace(_current.get(), **changes))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
