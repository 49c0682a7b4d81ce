"""Transport of the Moebius model fiber once around the boundary circle.

Along the loop t -> exp(2 pi i t) the fiber F_m^{-1}(1) is carried by

    w(t, z) = exp(2 pi i t) - exp(2 pi i rho'(|z|) t) z^2,
    s~(t, s, z) = s + (1/pi) int_0^t Im(dw/dt / w) dt,
    r~ = r          (|z| < 4/3),
    r~ = sign(r) |w| otherwise,

and Lambda_t(r, s, z) = ([r~, s~], exp(pi i rho' t) z).  For |z| <= 4/3
the integrand is identically 2 so s~ = s + 2t, which also gives the value
at z = +-1 where w vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_BUMP, BumpProfile, NumericConfig


class QuadratureError(RuntimeError):
    pass


def w_path(t, z, bump: BumpProfile = DEFAULT_BUMP):
    z = np.asarray(z, dtype=complex)
    rp = bump(np.abs(z))
    return np.exp(2j * np.pi * t) - np.exp(2j * np.pi * rp * t) * z * z


def _log_derivative_im(t, z, rp):
    """Im((dw/dt) / w) for arrays t (nodes) x z (points)."""
    e1 = np.exp(2j * np.pi * t)
    e2 = np.exp(2j * np.pi * rp * t) * z * z
    w = e1 - e2
    dw = 2j * np.pi * (e1 - rp * e2)
    return np.imag(dw / w)


def _gauss_legendre(z, rp, t, panels, order):
    x, wts = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, 1.0, panels + 1)
    h = (edges[1] - edges[0]) * t
    mids = (edges[:-1] + edges[1:]) / 2 * t
    nodes = (mids[:, None] + 0.5 * h * x[None, :]).ravel()
    weights = np.tile(0.5 * h * wts, panels)
    vals = _log_derivative_im(nodes[None, :], z[:, None], rp[:, None])
    return vals @ weights


def s_tilde(t: float, s, z, cfg: NumericConfig | None = None,
            bump: BumpProfile = DEFAULT_BUMP, max_panels: int = 1 << 12):
    """s~(t, s, z) by composite Gauss-Legendre with panel doubling.

    Panels are doubled until successive estimates agree to tol_identity.
    At the zeros z = +-1 of w the integrand is undefined and the continuous
    extension s + 2t is used.
    """
    cfg = cfg or NumericConfig()
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    s = np.broadcast_to(np.asarray(s, dtype=float), z.shape).astype(float)
    out = s + 2.0 * t
    outer = np.abs(1 - z * z) > 1e-9
    if t == 0 or not outer.any():
        return out
    zo = z[outer]
    rp = bump(np.abs(zo))
    panels = 4
    prev = _gauss_legendre(zo, rp, t, panels, cfg.quadrature_points)
    while True:
        panels *= 2
        cur = _gauss_legendre(zo, rp, t, panels, cfg.quadrature_points)
        if np.max(np.abs(cur - prev)) < cfg.tol_identity:
            break
        if panels >= max_panels:
            raise QuadratureError(
                f"s~ quadrature did not converge: change {np.max(np.abs(cur - prev)):.3g}")
        prev = cur
    out[outer] = s[outer] + cur / np.pi
    return out


def winding_oracle(z, samples: int = 4096, bump: BumpProfile = DEFAULT_BUMP):
    """(1/pi) times the total change of arg w(t, z) over t in [0, 1].

    Independent of the quadrature: unwraps the sampled argument.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    t = np.linspace(0.0, 1.0, samples + 1)
    w = w_path(t[None, :], z[:, None], bump)
    ang = np.unwrap(np.angle(w), axis=1)
    return (ang[:, -1] - ang[:, 0]) / np.pi


def transport(t: float, r, s, z, cfg: NumericConfig | None = None,
              bump: BumpProfile = DEFAULT_BUMP):
    """Lambda_t on arrays of fiber points; returns (r~, s~, z~)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    r = np.broadcast_to(np.asarray(r, dtype=float), z.shape)
    rp = bump(np.abs(z))
    st = s_tilde(t, s, z, cfg, bump)
    inner = np.abs(z) < bump.inner
    rt = np.where(inner, r, np.sign(r) * np.abs(w_path(t, z, bump)))
    zt = np.exp(1j * np.pi * rp * t) * z
    return rt, st, zt


def fiber_points(z, flip=None):
    """Points of F_m^{-1}(1) above given z, as (r, s) with r > 0 or its flip."""
    z = np.asarray(z, dtype=complex)
    v = 1 - z * z
    r = np.abs(v)
    s = np.angle(v) / np.pi
    if flip is not None:
        r = np.where(flip, -r, r)
        s = np.where(flip, s + 1, s)
    return r, s


def _moebius_value(r, s):
    # injective on [r, s]_m with r != 0
    return r * np.exp(1j * np.pi * s)


@dataclass(frozen=True)
class TransportReport:
    s_shift_error: float      # max |s~(1) - s - 2| for |z| <= 4/3
    oracle_error: float       # quadrature vs winding, |z| outside [0.9, 1.1]
    rotation_error: float     # Lambda_1 on the annulus vs z -> exp(i pi rho') z
    fixed_error: float        # Lambda_1 - id for |z| >= 5/3
    fiber_error: float        # F_m(Lambda_t p) - exp(2 pi i t)
    samples: int

    def passed(self, tol_shift=1e-8, tol_map=1e-6) -> bool:
        return (self.s_shift_error < tol_shift and self.oracle_error < tol_shift
                and max(self.rotation_error, self.fixed_error, self.fiber_error) < tol_map)


def monodromy_transport(cfg: NumericConfig | None = None, n: int = 1000,
                        bump: BumpProfile = DEFAULT_BUMP) -> TransportReport:
    cfg = cfg or NumericConfig()
    rng = cfg.rng(11)

    def disk(lo, hi, k):
        rad = np.sqrt(rng.uniform(lo * lo, hi * hi, k))
        return rad * np.exp(2j * np.pi * rng.uniform(0, 1, k))

    zi = disk(0.0, bump.inner, n)
    ri, si = fiber_points(zi, rng.uniform(size=n) < 0.5)
    shift = float(np.max(np.abs(s_tilde(1.0, si, zi, cfg, bump) - si - 2)))
    mask = np.abs(np.abs(zi) - 1) > 0.1
    shift_q = float(np.max(np.abs(winding_oracle(zi[mask], bump=bump) - 2)))
    shift = max(shift, shift_q)

    zo = np.concatenate([disk(0.0, 0.9, n // 2), disk(1.1, bump.inner, n // 2),
                         disk(bump.inner, 3.0, n)])
    so = np.zeros(zo.shape)
    quad = s_tilde(1.0, so, zo, cfg, bump)
    orc = winding_oracle(zo, bump=bump)
    oracle = float(np.max(np.abs(quad - orc)))

    za = disk(bump.inner, bump.outer, n)
    ra, sa = fiber_points(za, rng.uniform(size=n) < 0.5)
    rt, st, zt = transport(1.0, ra, sa, za, cfg, bump)
    zexp = np.exp(1j * np.pi * bump(np.abs(za))) * za
    ref = _moebius_value(*fiber_points(zexp))
    rot = float(max(np.max(np.abs(zt - zexp)), np.max(np.abs(_moebius_value(rt, st) - ref))))

    zf = disk(bump.outer, 3.0, n)
    rf, sf = fiber_points(zf, rng.uniform(size=n) < 0.5)
    rt, st, zt = transport(1.0, rf, sf, zf, cfg, bump)
    fixed = float(max(np.max(np.abs(zt - zf)),
                      np.max(np.abs(_moebius_value(rt, st) - _moebius_value(rf, sf)))))

    fib = 0.0
    zall = np.concatenate([zi[mask], za, zf])
    rall, sall = fiber_points(zall)
    for t in (0.25, 0.5, 0.75, 1.0):
        rt, st, zt = transport(t, rall, sall, zall, cfg, bump)
        val = _moebius_value(rt, st) + zt * zt
        fib = max(fib, float(np.max(np.abs(val - np.exp(2j * np.pi * t)))))
    return TransportReport(shift, oracle, rot, fixed, fib, n)
