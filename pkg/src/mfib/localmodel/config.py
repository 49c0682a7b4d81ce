from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

import numpy as np


@dataclass(frozen=True)
class NumericConfig:
    """Tolerances and resolutions shared by the numerical checks."""

    tol_identity: float = 1e-12
    tol_geom: float = 1e-6
    grid: int = 256
    ode_step: float = 1e-2
    quadrature_points: int = 16
    eps: float = 0.01
    seed: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "seed":
                if v < 0:
                    raise ValueError("seed must be non-negative")
            elif not v > 0:
                raise ValueError(f"{f.name} must be positive, got {v}")

    def rng(self, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    def with_(self, **kw) -> "NumericConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def default_seed() -> int:
    return int(os.environ.get("MFIB_SEED", "0"))


def smoothstep5(u):
    """C^2 quintic ramp 6u^5 - 15u^4 + 10u^3, clamped to [0, 1]."""
    u = np.clip(u, 0.0, 1.0)
    return u * u * u * (u * (6.0 * u - 15.0) + 10.0)


@dataclass(frozen=True)
class BumpProfile:
    """Monotone cut-off equal to 1 on [0, inner] and 0 on [outer, inf)."""

    inner: float = 4.0 / 3.0
    outer: float = 5.0 / 3.0

    def __post_init__(self):
        if not 0 < self.inner < self.outer:
            raise ValueError("need 0 < inner < outer")

    def __call__(self, r):
        return 1.0 - smoothstep5((np.asarray(r, dtype=float) - self.inner)
                                 / (self.outer - self.inner))


DEFAULT_BUMP = BumpProfile()
