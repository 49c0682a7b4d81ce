"""Singularity-theoretic checks on the Moebius model and its stable perturbation.

F_eps([r, s]_m, z) = r e^{pi i s} + z^2 + eps e^{4 pi i s}; in the
coordinates (r, theta = pi s, x, y) its critical set is a circle that folds
everywhere except at three cusps, and the critical value curve
gamma(theta) is embedded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import sympy as sp
from scipy.optimize import least_squares

from .config import NumericConfig

# real maps (r, s, x, y) -> R^2 -------------------------------------------------

def _split(v):
    return np.stack([np.real(v), np.imag(v)], axis=-1)


def real_map(model: str, eps: float = 0.01):
    """Return (f, chart) with f acting on arrays of shape (..., 4)."""
    def fm(P):
        r, s, x, y = np.moveaxis(P, -1, 0)
        return _split(r * np.exp(1j * np.pi * s) + (x + 1j * y) ** 2)

    def fe(P):
        r, s, x, y = np.moveaxis(P, -1, 0)
        return _split(r * np.exp(1j * np.pi * s) + (x + 1j * y) ** 2
                      + eps * np.exp(4j * np.pi * s))

    def fa(P):
        r, s, x, y = np.moveaxis(P, -1, 0)
        return _split(r * np.exp(2j * np.pi * s) + (x + 1j * y) ** 2)

    def sub(P):
        # a submersion: the z-derivative alone has rank 2
        r, s, x, y = np.moveaxis(P, -1, 0)
        return _split(r * np.exp(2j * np.pi * s) + (x + 1j * y))

    table = {"Fm": (fm, "M"), "Feps": (fe, "M"), "Fa": (fa, "A"), "submersion": (sub, "A")}
    if model not in table:
        raise ValueError(f"unknown model {model!r}")
    return table[model]


_PAIRS = [(i, j) for i in range(4) for j in range(i + 1, 4)]


def jacobian(f, P, h: float = 1e-6):
    """Central-difference Jacobian, shape (..., 2, 4)."""
    P = np.asarray(P, dtype=float)
    cols = []
    for k in range(4):
        e = np.zeros(4)
        e[k] = h
        cols.append((f(P + e) - f(P - e)) / (2 * h))
    return np.stack(cols, axis=-1)


def minors(J):
    return np.stack([J[..., 0, i] * J[..., 1, j] - J[..., 0, j] * J[..., 1, i]
                     for i, j in _PAIRS], axis=-1)


@dataclass
class CriticalScan:
    points: np.ndarray      # refined critical points (r, s, x, y)
    components: int
    residual: float         # distance from the expected closed-form circle
    polyline_residual: float  # piecewise-linear interpolation error at slice midpoints
    max_minor: float


def expected_critical_r(model: str, s, eps: float):
    if model == "Feps":
        return -4 * eps * np.cos(3 * np.pi * np.asarray(s))
    return np.zeros_like(np.asarray(s, dtype=float))


def critical_scan(model: str, cfg: NumericConfig | None = None, *, eps: float | None = None,
                  local: int = 8, radius: float | None = None, refine: bool = True) -> CriticalScan:
    """Locate the critical set slice by slice in s.

    On every slice a coarse (r, x, y) grid is searched for the smallest
    singular value of the Jacobian; the best node is polished by least
    squares on the six 2x2 minors, and kept if every minor then falls below
    tol_geom.  Kept points on neighbouring slices are chained into
    components, the last slice being joined to the first through the chart
    identification.
    """
    cfg = cfg or NumericConfig()
    eps = cfg.eps if eps is None else eps
    if cfg.grid < 2 or local < 2:
        raise ValueError("empty grid")
    f, chart = real_map(model, eps)
    R = radius if radius is not None else max(0.1, 8 * eps)
    n = cfg.grid
    s_vals = (np.arange(n) + 0.5) / n
    ax = np.linspace(-R, R, local)
    rr, xx, yy = np.meshgrid(ax, ax, ax, indexing="ij")
    cube = np.stack([rr.ravel(), xx.ravel(), yy.ravel()], axis=1)

    pts, worst = [], 0.0
    for s in s_vals:
        P = np.column_stack([cube[:, 0], np.full(len(cube), s), cube[:, 1], cube[:, 2]])
        sig = np.linalg.svd(jacobian(f, P), compute_uv=False)[:, -1]
        best = P[int(np.argmin(sig))]
        if refine:
            def resid(v, s=s):
                return minors(jacobian(f, np.array([v[0], s, v[1], v[2]])))
            sol = least_squares(resid, best[[0, 2, 3]], xtol=1e-15, ftol=1e-15, gtol=1e-15)
            best = np.array([sol.x[0], s, sol.x[1], sol.x[2]])
        m = float(np.max(np.abs(minors(jacobian(f, best)))))
        if m < cfg.tol_geom:
            pts.append(best)
            worst = max(worst, m)
    pts = np.array(pts).reshape(-1, 4)
    if not len(pts):
        return CriticalScan(pts, 0, 0.0, 0.0, 0.0)

    link = 0.25 * R
    comps = 1
    for a, b in zip(pts[:-1], pts[1:]):
        if np.max(np.abs(a[[0, 2, 3]] - b[[0, 2, 3]])) > link or b[1] - a[1] > 1.5 / n:
            comps += 1
    if comps > 1 and len(pts) > 1:
        last, first = pts[-1].copy(), pts[0]
        if chart == "M":
            last[0] = -last[0]
        if (np.max(np.abs(last[[0, 2, 3]] - first[[0, 2, 3]])) <= link
                and (first[1] + 1) - pts[-1][1] <= 1.5 / n):
            comps -= 1

    exp_r = expected_critical_r(model, pts[:, 1], eps)
    resid = float(np.max(np.hypot(pts[:, 0] - exp_r, np.hypot(pts[:, 2], pts[:, 3]))))
    if len(pts) > 1:
        mid_s = (pts[:-1, 1] + pts[1:, 1]) / 2
        mid_r = (pts[:-1, 0] + pts[1:, 0]) / 2
        poly = float(np.max(np.abs(mid_r - expected_critical_r(model, mid_s, eps))))
    else:
        poly = 0.0
    return CriticalScan(pts, comps, resid, poly, worst)


# Saji criteria via symbolic derivatives -----------------------------------

@lru_cache(maxsize=None)
def _saji_symbols():
    r, th, x, y, e = sp.symbols("r theta x y epsilon", real=True)
    F1 = r * sp.cos(th) + x**2 - y**2 + e * sp.cos(4 * th)
    F2 = r * sp.sin(th) + 2 * x * y + e * sp.sin(4 * th)
    coords = (r, th, x, y)
    dF = {v: (sp.diff(F1, v), sp.diff(F2, v)) for v in coords}

    def apply(vec, g):
        return sum(c * sp.diff(g, v) for v, c in vec.items())

    def dF_of(vec):
        return tuple(sum(c * dF[v][k] for v, c in vec.items()) for k in (0, 1))

    xi1 = {r: 1}
    etas = [{x: 1}, {y: 1}, {th: 1, r: 4 * e * sp.sin(3 * th)}]
    a = dF_of(xi1)
    lams = []
    for v in etas:
        b = dF_of(v)
        lams.append(sp.simplify(sp.expand_trig(a[0] * b[1] - a[1] * b[0])))
    r_crit = sp.solve(sp.Eq(lams[2], 0), r)
    if len(r_crit) != 1:
        raise AssertionError("lambda_3 is expected to be affine in r")
    r_crit = sp.simplify(r_crit[0])
    Hm = sp.Matrix(3, 3, lambda i, j: apply(etas[i], lams[j]))
    H = Hm.det()
    on_S = {r: r_crit, x: 0, y: 0}
    H_S = sp.simplify(H.subs(on_S))
    dH_S = sp.diff(H_S, th)
    gamma = (F1 + sp.I * F2).subs(on_S)
    mods = ["numpy"]
    return {
        "lambdas": sp.lambdify((r, th, x, y, e), lams, mods),
        "r_crit": sp.lambdify((th, e), r_crit, mods),
        "H": sp.lambdify((r, th, x, y, e), H, mods),
        "H_S": sp.lambdify((th, e), H_S, mods),
        "dH_S": sp.lambdify((th, e), dH_S, mods),
        "gamma": sp.lambdify((th, e), gamma, mods),
        "exprs": {"lambdas": lams, "r_crit": r_crit, "H_S": H_S, "dH_S": dH_S},
    }


def saji_functions():
    return _saji_symbols()


def theta_grid(n: int) -> np.ndarray:
    """theta_k = (k - 1/2) pi / n for k = 0..n; straddles 0, never hits a cusp."""
    return (np.arange(n + 1) - 0.5) * np.pi / n


@dataclass
class SajiReport:
    cusps: tuple            # theta values in [0, pi)
    cusp_slopes: tuple      # dH/dtheta at the cusps
    folds: tuple            # (theta_start, theta_end) arcs between cusps
    lambda_residual: float  # max |lambda_i| at the sampled critical points
    H_error: float          # max |H - 32 eps sin 3 theta|
    dH_error: float         # max |dH/dtheta - 96 eps cos 3 theta|
    cusp_error: float       # distance of the cusps from {0, pi/3, 2 pi/3}


CUSPS_EXPECTED = (0.0, math.pi / 3, 2 * math.pi / 3)


def saji_classify(eps: float, cfg: NumericConfig | None = None) -> SajiReport:
    cfg = cfg or NumericConfig()
    if eps <= 0:
        raise ValueError("eps = 0 is degenerate: the critical circle is not wrinkled")
    if eps > 0.1:
        raise ValueError("eps must lie in (0, 0.1]")
    fn = saji_functions()
    th = theta_grid(cfg.grid)
    rc = np.broadcast_to(fn["r_crit"](th, eps), th.shape)
    zero = np.zeros_like(th)
    lam = np.array([np.broadcast_to(v, th.shape) for v in fn["lambdas"](rc, th, zero, zero, eps)])
    H = np.broadcast_to(fn["H"](rc, th, zero, zero, eps), th.shape)
    dH = np.broadcast_to(fn["dH_S"](th, eps), th.shape)
    H_err = float(np.max(np.abs(H - 32 * eps * np.sin(3 * th))))
    dH_err = float(np.max(np.abs(dH - 96 * eps * np.cos(3 * th))))

    cusps, slopes = [], []
    sgn = np.sign(H)
    for k in np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]:
        a = H[k] / (H[k] - H[k + 1])
        root = th[k] + a * (th[k + 1] - th[k])
        root = root % math.pi
        if root > math.pi - 1e-9:
            root = 0.0
        slope = float(fn["dH_S"](root, eps))
        if slope == 0:
            raise AssertionError("degenerate 2-singular point")
        cusps.append(float(root))
        slopes.append(slope)
    order = np.argsort(cusps)
    cusps = tuple(cusps[i] for i in order)
    slopes = tuple(slopes[i] for i in order)
    folds = tuple((cusps[i], cusps[(i + 1) % len(cusps)] + (math.pi if i + 1 == len(cusps) else 0))
                  for i in range(len(cusps)))
    if len(cusps) == len(CUSPS_EXPECTED):
        cusp_err = max(abs(a - b) for a, b in zip(cusps, CUSPS_EXPECTED))
    else:
        cusp_err = math.inf
    return SajiReport(cusps, slopes, folds, float(np.max(np.abs(lam))), H_err, dH_err, cusp_err)


# the critical value curve ------------------------------------------------

def gamma_closed_form(theta, eps):
    theta = np.asarray(theta)
    return -eps * np.exp(4j * theta) - 2 * eps * np.exp(-2j * theta)


def gamma_curve(theta, eps):
    """F_eps at the critical point over theta (evaluated, not the closed form)."""
    fn = saji_functions()
    theta = np.asarray(theta, dtype=float)
    r = np.broadcast_to(fn["r_crit"](theta, eps), theta.shape)
    return r * np.exp(1j * theta) + eps * np.exp(4j * theta)


@dataclass
class GammaReport:
    injective: bool
    min_separation: float
    closed_form_error: float
    factor_identity_error: float
    min_factor: float


def gamma_injectivity(eps: float, cfg: NumericConfig | None = None, n: int = 10_000,
                      angular_tol: float = 1e-2, chunk: int = 1000, pairs: int = 10_000) -> GammaReport:
    """Pairwise separation of gamma over theta in [0, pi).

    Pairs closer than angular_tol (mod pi) are excluded, since nearby
    parameters give nearby points.  The algebraic oracle writes
    gamma = -eps (w^2 + 2 / w) with w = e^{2 i theta} and checks the
    factorization of gamma(w1) - gamma(w2) together with a positive lower
    bound for its second factor on random pairs.
    """
    cfg = cfg or NumericConfig()
    if eps <= 0:
        raise ValueError("eps must be positive")
    th = np.arange(n) * math.pi / n
    g = gamma_curve(th, eps)
    cf = float(np.max(np.abs(g - gamma_closed_form(th, eps))))
    best = math.inf
    for i0 in range(0, n, chunk):
        d = np.abs(g[i0:i0 + chunk, None] - g[None, :])
        dth = np.abs(th[i0:i0 + chunk, None] - th[None, :])
        dth = np.minimum(dth, math.pi - dth)
        d[dth <= angular_tol] = np.inf
        best = min(best, float(d.min()))

    rng = cfg.rng(23)
    t1, t2 = rng.uniform(0, math.pi, (2, pairs))
    far = np.minimum(np.abs(t1 - t2), math.pi - np.abs(t1 - t2)) > angular_tol
    w1, w2 = np.exp(2j * t1[far]), np.exp(2j * t2[far])
    lhs = (w1**2 + 2 / w1) - (w2**2 + 2 / w2)
    factor = w1 + w2 - 2 / (w1 * w2)
    ident = float(np.max(np.abs(lhs - (w1 - w2) * factor)))
    min_factor = float(np.min(np.abs(factor)))
    ok = best > 0 and min_factor > 0
    return GammaReport(bool(ok), best, cf, ident, min_factor)


# projection identities -------------------------------------------------------

def _f_germ(r, s, x, y):
    return (r * np.cos(s) + x * x - y * y, r * np.sin(s) + 2 * x * y)


@dataclass
class IdentityReport:
    errors: dict   # field name -> max abs error
    points: int

    def passed(self, tol: float) -> bool:
        return max(self.errors.values()) < tol


def ae_identity_check(cfg: NumericConfig | None = None, n: int = 1000) -> IdentityReport:
    """rho(tf(e_i)) for e = (d_s, d_r, d_x, d_y) at seeded random points.

    tf(e) is the derivative of f along e, taken by the complex-step method
    (exact to rounding), and rho projects onto (-sin s, cos s).
    """
    cfg = cfg or NumericConfig()
    rng = cfg.rng(31)
    r, s, x, y = rng.uniform(-2, 2, (4, n))
    h = 1e-30
    base = [r, s, x, y]
    order = {"d_s": 1, "d_r": 0, "d_x": 2, "d_y": 3}
    expected = {
        "d_s": r,
        "d_r": np.zeros(n),
        "d_x": 2 * (y * np.cos(s) - x * np.sin(s)),
        "d_y": 2 * (x * np.cos(s) + y * np.sin(s)),
    }
    errors = {}
    for name, k in order.items():
        args = [a.astype(complex) for a in base]
        args[k] = args[k] + 1j * h
        f1, f2 = _f_germ(*args)
        d1, d2 = np.imag(f1) / h, np.imag(f2) / h
        rho = -np.sin(s) * d1 + np.cos(s) * d2
        errors[name] = float(np.max(np.abs(rho - expected[name])))
    return IdentityReport(errors, n)
