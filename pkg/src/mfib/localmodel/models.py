"""The explicit local maps and the base-point data of their fibers.

Points of the Moebius band M and the annulus A are written [r, s] with
the identifications

    M:  (r, s + 1) ~ (-r, s)
    A:  (r, s + 1) ~ (r, s)

and the total spaces are M x C and A x C with fiber coordinate z = x + iy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import NumericConfig

CHART_OF = {"Fm": "M", "Fa": "A", "Feps": "M"}


class ChartError(ValueError):
    pass


class SingularValueError(ValueError):
    """Raised for the singular value w = 0."""


class ConvexityError(ValueError):
    pass


@dataclass(frozen=True)
class LocalPoint:
    chart: str
    r: float
    s: float
    z: complex = 0j

    def __post_init__(self):
        if self.chart not in ("M", "A"):
            raise ChartError(f"unknown chart {self.chart!r}")

    def normalized(self) -> "LocalPoint":
        """Representative with s in [0, 1)."""
        k = math.floor(self.s)
        s = self.s - k
        if s >= 1.0:  # -1e-17 - (-1) rounds to 1.0
            s, k = 0.0, k + 1
        r = self.r
        if self.chart == "M" and k % 2:
            r = -r
        return LocalPoint(self.chart, r, s, self.z)

    def shifted(self, n: int) -> "LocalPoint":
        """The equivalent coordinates with s replaced by s + n."""
        r = -self.r if self.chart == "M" and n % 2 else self.r
        return LocalPoint(self.chart, r, self.s + n, self.z)


def _base_term(model: str, r, s, eps: float):
    if model == "Fm":
        return r * np.exp(1j * np.pi * s)
    if model == "Fa":
        return r * np.exp(2j * np.pi * s)
    if model == "Feps":
        return r * np.exp(1j * np.pi * s) + eps * np.exp(4j * np.pi * s)
    raise ChartError(f"unknown model {model!r}")


def eval_array(model: str, r, s, z, eps: float = 0.01):
    """Vectorized evaluation on raw coordinates (no chart bookkeeping)."""
    return _base_term(model, r, s, eps) + np.asarray(z) ** 2


def eval_local_model(model: str, p: LocalPoint, eps: float = 0.01) -> complex:
    """F_m, F_a or F_eps at p.  The chart must match the model."""
    if model not in CHART_OF:
        raise ChartError(f"unknown model {model!r}")
    if p.chart != CHART_OF[model]:
        raise ChartError(f"{model} lives on chart {CHART_OF[model]}, got {p.chart}")
    return complex(eval_array(model, p.r, p.s, p.z, eps))


def same_point(p: LocalPoint, q: LocalPoint, tol: float = 1e-9) -> bool:
    """Equality up to the chart identification."""
    if p.chart != q.chart:
        return False
    a, b = p.normalized(), q.normalized()
    if abs(a.z - b.z) > tol:
        return False
    for n in (-1, 0, 1):
        c = b.shifted(n)
        if abs(a.r - c.r) <= tol and abs(a.s - c.s) <= tol:
            return True
    return False


def branch_points(model: str, w: complex, tol: float = 1e-9) -> list:
    """Base points over which the fiber of w has a single z, i.e. z = 0.

    Each solution of the base equation is produced on both sheets r > 0 and
    r < 0 and the list is then reduced modulo the chart identification.
    """
    w = complex(w)
    if w == 0:
        raise SingularValueError("w = 0 is the singular value")
    if model not in ("Fm", "Fa"):
        raise ChartError("branch points are computed for Fm and Fa")
    rho, phi = abs(w), cmath.phase(w)
    if model == "Fm":
        # r exp(i pi s) = w
        cands = [LocalPoint("M", rho, phi / math.pi), LocalPoint("M", -rho, phi / math.pi + 1)]
    else:
        # r exp(2 pi i s) = w
        u = phi / (2 * math.pi)
        cands = [LocalPoint("A", rho, u), LocalPoint("A", -rho, u + 0.5)]
    out = []
    for c in cands:
        c = c.normalized()
        val = eval_local_model(model, c)
        if abs(val - w) > tol * max(1.0, rho):
            raise AssertionError(f"branch candidate misses the fiber: {val} vs {w}")
        if not any(same_point(c, q, tol) for q in out):
            out.append(c)
    return out


def riemann_hurwitz(base_euler: int, branch_count: int, degree: int = 2) -> int:
    return degree * base_euler - branch_count


def fiber_euler(model: str, w: complex) -> int:
    """Euler characteristic of the fiber as a double cover of the band or annulus."""
    # chi(M) = chi(A) = 0
    return riemann_hurwitz(0, len(branch_points(model, w)))


@dataclass(frozen=True)
class ConvexityReport:
    ok: bool
    margin: float
    bound: float


def convexity_check(w: complex, eps: float = 0.05, cfg: NumericConfig | None = None) -> ConvexityReport:
    """Check that q(xi) = w - (+-eta + xi)^2 maps the eps-disk to a convex region.

    Uses the criterion Re(1 + xi q''/q') > 0 on a polar grid; here q'' / q' =
    1 / (+-eta + xi), which is where the closed-form lower bound
    1 - eps / (|eta| - eps) comes from.
    """
    cfg = cfg or NumericConfig()
    w = complex(w)
    if w == 0:
        raise SingularValueError("w = 0 is the singular value")
    eta = cmath.sqrt(w)
    if abs(eta) <= eps:
        raise ConvexityError(f"q' vanishes in the disk: |eta| = {abs(eta):.3g} <= eps")
    n = max(cfg.grid, 16)
    rad = np.linspace(0.0, eps, n)
    ang = np.linspace(0.0, 2 * np.pi, 2 * n, endpoint=False)
    xi = (rad[:, None] * np.exp(1j * ang[None, :])).ravel()
    margin = np.inf
    for e in (eta, -eta):
        q = np.polynomial.Polynomial([w - e * e, -2 * e, -1])
        dq, ddq = q.deriv(), q.deriv(2)
        d1 = dq(xi)
        if np.min(np.abs(d1)) == 0:
            raise ConvexityError("q' vanishes on the grid")
        margin = min(margin, float(np.min(np.real(1 + xi * ddq(xi) / d1))))
    bound = 1 - eps / (abs(eta) - eps)
    return ConvexityReport(bool(margin > 0), margin, bound)
