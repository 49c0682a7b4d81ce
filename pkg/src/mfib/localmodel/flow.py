"""Gradient-like flow on the level omega = -1/2 of the annulus model.

Coordinates on A x C are (r, s, x, y) with Gamma([r, s]_a) = r exp(2 pi i s),
so F_a = Gamma + z^2.  We put

    omega = -Re F_a,    eta = Im F_a,
    V_z = (y d_x + x d_y) / (2 |z|^2),
    V_r = sin(2 pi s) d_r + cos(2 pi s) / (2 pi r) d_s,
    V   = rho_z V_z + rho_r V_r,

where rho_r is 1 for |z| <= 0.1 and 0 for |z| >= 0.2.  Both pieces satisfy
V(omega) = 0 and V(eta) = 1, so the flow slides points along eta at unit
speed inside the level set.  The attaching circles of the two index-2
critical points sit on this level and are pushed into F_a^{-1}(1/2) by
H_t(p) = phi^V_{-t eta(p)}(p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import NumericConfig, smoothstep5
from .models import LocalPoint, branch_points

LEVEL = -0.5
W_REF = 0.5
PARTITION = (0.1, 0.2)


class FlowError(RuntimeError):
    pass


class DomainError(ValueError):
    """Point off the level set or outside the region where V is defined."""


class BranchCollisionError(ValueError):
    pass


class AmbiguousIntersectionError(RuntimeError):
    pass


@dataclass
class TracedCurve:
    """Closed sampled curve; ``data`` rows are (r, s, x, y)."""

    chart: str
    data: np.ndarray
    closed: bool = True
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim != 2 or self.data.shape[1] != 4:
            raise ValueError("curve data must have shape (n, 4)")

    def __len__(self):
        return len(self.data)

    @property
    def samples(self) -> list:
        return [LocalPoint(self.chart, r, s, complex(x, y)) for r, s, x, y in self.data]

    @property
    def z(self) -> np.ndarray:
        return self.data[:, 2] + 1j * self.data[:, 3]

    def closing_gap(self) -> float:
        """Distance between the last and first sample, modulo s -> s + 1."""
        a, b = self.data[-1], self.data[0]
        ds = (a[1] - b[1]) - round(a[1] - b[1])
        return float(math.hypot(math.hypot(a[0] - b[0], ds), abs(complex(*a[2:]) - complex(*b[2:]))))


# scalar fields -----------------------------------------------------------

def omega(P):
    r, s, x, y = P.T
    return -(r * np.cos(2 * np.pi * s) + x * x - y * y)


def eta(P):
    r, s, x, y = P.T
    return r * np.sin(2 * np.pi * s) + 2 * x * y


def grad_omega(P):
    r, s, x, y = P.T
    c, sn = np.cos(2 * np.pi * s), np.sin(2 * np.pi * s)
    return -np.stack([c, -2 * np.pi * r * sn, 2 * x, -2 * y], axis=1)


def gamma_map(P):
    return P[:, 0] * np.exp(2j * np.pi * P[:, 1])


def partition(absz):
    lo, hi = PARTITION
    rho_r = 1.0 - smoothstep5((np.asarray(absz) - lo) / (hi - lo))
    return rho_r, 1.0 - rho_r


def field_array(P) -> np.ndarray:
    """V at each row of P, with each piece masked where its weight vanishes."""
    P = np.atleast_2d(P)
    r, s, x, y = P.T
    zz = x * x + y * y
    rho_r, rho_z = partition(np.sqrt(zz))
    V = np.zeros_like(P)
    use_z = rho_z > 0
    if use_z.any():
        k = rho_z[use_z] / (2 * zz[use_z])
        V[use_z, 2] = k * y[use_z]
        V[use_z, 3] = k * x[use_z]
    use_r = rho_r > 0
    if use_r.any():
        th = 2 * np.pi * s[use_r]
        V[use_r, 0] = rho_r[use_r] * np.sin(th)
        V[use_r, 1] = rho_r[use_r] * np.cos(th) / (2 * np.pi * r[use_r])
    return V


def flow_field(p: LocalPoint, cfg: NumericConfig | None = None) -> np.ndarray:
    cfg = cfg or NumericConfig()
    P = np.array([[p.r, p.s, p.z.real, p.z.imag]])
    if p.chart != "A":
        raise DomainError("the flow lives on the annulus chart")
    if abs(omega(P)[0] - LEVEL) >= cfg.tol_geom:
        raise DomainError(f"omega(p) = {omega(P)[0]:.6g}, expected {LEVEL}")
    rho_r, _ = partition(abs(p.z))
    if rho_r > 0 and p.r == 0:
        raise DomainError("p is outside both partition supports (r = 0 with rho_r > 0)")
    return field_array(P)[0]


def directional_derivative(f, P, V, h: float = 1e-5):
    return (f(P + h * V) - f(P - h * V)) / (2 * h)


# integration --------------------------------------------------------------

def _rk4(P0, T, steps, record=False):
    h = 1.0 / steps
    P = P0.copy()
    Tc = T[:, None]
    path = [P.copy()] if record else None
    for _ in range(steps):
        k1 = Tc * field_array(P)
        k2 = Tc * field_array(P + 0.5 * h * k1)
        k3 = Tc * field_array(P + 0.5 * h * k2)
        k4 = Tc * field_array(P + h * k3)
        P = P + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if record:
            path.append(P.copy())
    return P, path


def integrate(P0, T, cfg: NumericConfig | None = None, record: bool = False,
              max_doublings: int = 10):
    """Flow each row of P0 for its own time T[i].

    Classical RK4 on the rescaled interval [0, 1]; the step count doubles
    until endpoints move by less than tol_geom / 10.  Returns the endpoints,
    the step count used and optionally the recorded trajectories.
    """
    cfg = cfg or NumericConfig()
    P0 = np.atleast_2d(np.asarray(P0, dtype=float))
    T = np.broadcast_to(np.asarray(T, dtype=float), (len(P0),)).copy()
    steps = max(2, int(math.ceil(1.0 / cfg.ode_step)))
    coarse, _ = _rk4(P0, T, steps)
    for _ in range(max_doublings):
        steps *= 2
        fine, path = _rk4(P0, T, steps, record)
        change = float(np.max(np.abs(fine - coarse))) if len(P0) else 0.0
        if change < cfg.tol_geom / 10:
            return fine, steps, path
        coarse = fine
    raise FlowError(f"step refinement exhausted; last change {change:.3g}")


# attaching circles -----------------------------------------------------------

def attach_circles(eps: float = 0.5, n: int = 400, phase: float = 0.0) -> tuple:
    """C_1, C_2 on x^2 + cos^2(2 pi s) = eps, y = 0, r = cos(2 pi s).

    C_1 takes s in (0, 1/2) and C_2 takes s in (1/2, 1).  Both are
    parametrized by cos(2 pi s) = sqrt(eps) cos(phi), x = sqrt(eps) sin(phi)
    with phi = 2 pi (k + phase) / n.  On these curves omega = -eps, so eps = 1/2 is the
    level the flow works on.
    """
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    phi = 2 * np.pi * (np.arange(n) + phase) / n
    c = math.sqrt(eps) * np.cos(phi)
    x = math.sqrt(eps) * np.sin(phi)
    a = np.arccos(c) / (2 * np.pi)
    curves = []
    for s in (a, 1.0 - a):
        P = np.stack([c, s, x, np.zeros(n)], axis=1)
        curves.append(TracedCurve("A", P, True, {"eps": eps, "eta": eta(P), "phi": phi}))
    return tuple(curves)


def level_crossings(C: TracedCurve, u: float) -> int:
    """Points of the closed curve on {eta = u}.

    Samples with eta exactly u count once, as do strict sign changes of
    eta - u between neighbouring samples.
    """
    e = np.sign(C.metadata.get("eta", eta(C.data)) - u)
    return int(np.count_nonzero(e == 0) + np.count_nonzero(e * np.roll(e, -1) < 0))


def crossing_bound(eps: float) -> float:
    """Largest |eta| on C_i: eta = c sqrt(1 - c^2) with c^2 <= eps."""
    c2 = min(eps, 0.5)
    return math.sqrt(c2 * (1 - c2))


@dataclass
class FlowReport:
    t: float
    steps: int
    eta_error: float       # max |eta(H_t p) - (1 - t) eta(p)|
    omega_error: float     # max |omega(H_t p) + 1/2|
    field_omega: float     # max |V(omega)| along trajectories
    field_eta: float       # max |V(eta) - 1| along trajectories
    gamma_re_drift: float  # max change of Re(Gamma) along trajectories

    def passed(self, tol: float) -> bool:
        return max(self.eta_error, self.omega_error, self.field_omega,
                   self.field_eta, self.gamma_re_drift) < tol


def isotopy_flow(C: TracedCurve, t: float, cfg: NumericConfig | None = None) -> TracedCurve:
    """H_t(C): every sample flowed for time -t * eta(p)."""
    cfg = cfg or NumericConfig()
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    P0 = C.data
    if np.max(np.abs(omega(P0) - LEVEL)) >= cfg.tol_geom:
        raise DomainError("curve is not on the level omega = -1/2")
    e0 = eta(P0)
    P, steps, path = integrate(P0, -t * e0, cfg, record=True)
    traj = np.stack(path)  # (steps + 1, n, 4)
    flat = traj.reshape(-1, 4)
    V = field_array(flat)
    moving = np.repeat((np.abs(e0) > 0)[None, :], len(traj), axis=0).ravel()
    vo = directional_derivative(omega, flat[moving], V[moving])
    ve = directional_derivative(eta, flat[moving], V[moving])
    re = np.real(gamma_map(flat)).reshape(len(traj), -1)
    report = FlowReport(
        t=t, steps=steps,
        eta_error=float(np.max(np.abs(eta(P) - (1 - t) * e0))),
        omega_error=float(np.max(np.abs(omega(P) - LEVEL))),
        field_omega=float(np.max(np.abs(vo))) if vo.size else 0.0,
        field_eta=float(np.max(np.abs(ve - 1))) if ve.size else 0.0,
        gamma_re_drift=float(np.max(np.abs(re - re[0]))),
    )
    meta = dict(C.metadata)
    meta.update({"t": t, "eta": eta(P), "eta0": e0, "report": report})
    return TracedCurve(C.chart, P, C.closed, meta)


# tangency and framing ------------------------------------------------------

def _tangents(C: TracedCurve) -> np.ndarray:
    P = C.data
    if not C.closed:
        return np.gradient(P, axis=0)
    return (np.roll(P, -1, axis=0) - np.roll(P, 1, axis=0)) / 2


def _complement(G, T, N):
    """Unit vector orthogonal to the rows G, T, N (row-wise, in R^4)."""
    M = np.stack([G, T, N], axis=1)  # (n, 3, 4)
    out = np.empty((len(G), 4))
    for k in range(4):
        cols = [j for j in range(4) if j != k]
        out[:, k] = (-1) ** k * np.linalg.det(M[:, :, cols])
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def _unit(v):
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _reject(v, basis):
    for b in basis:
        v = v - np.sum(v * b, axis=1, keepdims=True) * b
    return v


@dataclass
class FramingReport:
    identity_error_r: float   # V(r - cos 2 pi s) vs 2 rho_r sin 2 pi s
    identity_error_y: float   # V(y) vs x rho_z / (2 |z|^2)
    tangent_margin: float     # min sigma_min of (unit tangent, unit V)
    normal_margin: float      # min |V projected to the normal plane of C|
    dy_margin: float          # min |d_y projected to the normal plane of C|
    pointwise_dy_margin: float  # min sigma_min of (unit V, d_y); 0 where V || d_y
    relative_winding: int     # turns of V relative to d_y in the normal plane

    def passed(self, tol_identity: float) -> bool:
        return (max(self.identity_error_r, self.identity_error_y) < tol_identity
                and self.tangent_margin > 0 and self.normal_margin > 0
                and self.dy_margin > 0 and self.relative_winding == 0)


def tangency_framing_check(C: TracedCurve, cfg: NumericConfig | None = None) -> FramingReport:
    """Transversality of V to C and the framing V defines on C.

    The framing comparison uses the normal plane of C inside the level set:
    both V and d_y are projected there and the winding of one relative to
    the other is counted.  Where rho_r = 0 and y = 0, V is a positive
    multiple of d_y, so a pointwise independence test of (V, d_y) is not
    meaningful; its value is reported for reference only.
    """
    cfg = cfg or NumericConfig()
    P = C.data
    r, s, x, y = P.T
    V = field_array(P)
    rho_r, rho_z = partition(np.hypot(x, y))
    grad_f = np.stack([np.ones_like(r), 2 * np.pi * np.sin(2 * np.pi * s),
                       np.zeros_like(r), np.zeros_like(r)], axis=1)
    on_curve = np.abs(r - np.cos(2 * np.pi * s)) < cfg.tol_identity
    lhs = np.sum(V * grad_f, axis=1)
    err_r = float(np.max(np.abs(lhs - 2 * rho_r * np.sin(2 * np.pi * s))[on_curve])) \
        if on_curve.any() else math.inf
    zz = x * x + y * y
    expect_y = np.where(rho_z > 0, x * rho_z / (2 * np.where(zz > 0, zz, 1)), 0.0)
    err_y = float(np.max(np.abs(V[:, 3] - expect_y)))

    T = _unit(_tangents(C))
    Vu = _unit(V)
    tangent_margin = float(np.min(np.linalg.svd(np.stack([T, Vu], axis=2), compute_uv=False)[:, -1]))

    G = _unit(grad_omega(P))
    Tn = _unit(_reject(T, [G]))
    dy = np.tile([0.0, 0.0, 0.0, 1.0], (len(P), 1))
    n1_raw = _reject(dy, [G, Tn])
    dy_margin = float(np.min(np.linalg.norm(n1_raw, axis=1)))
    n1 = _unit(n1_raw)
    n2 = _complement(G, Tn, n1)
    vn = _reject(V, [G, Tn])
    normal_margin = float(np.min(np.linalg.norm(vn, axis=1)))
    ang = np.arctan2(np.sum(vn * n2, axis=1), np.sum(vn * n1, axis=1))
    ang = np.unwrap(np.append(ang, ang[0]))
    winding = int(round((ang[-1] - ang[0]) / (2 * np.pi)))
    pointwise = float(np.min(np.linalg.svd(np.stack([Vu, dy], axis=2), compute_uv=False)[:, -1]))
    return FramingReport(err_r, err_y, tangent_margin, normal_margin, dy_margin,
                         pointwise, winding)


# projection to the annulus ------------------------------------------------

def annulus_embedding(r, s):
    """A -> C*, [r, s]_a -> exp(r + 2 pi i s); injective, unlike Gamma."""
    return np.exp(np.asarray(r) + 2j * np.pi * np.asarray(s))


def _chart_distance(P_rs, q):
    ds = (P_rs[:, 1] - q[1]) - np.round(P_rs[:, 1] - q[1])
    return np.hypot(P_rs[:, 0] - q[0], ds)


def branch_reference(w: complex = W_REF) -> list:
    return [(p.r, p.s) for p in branch_points("Fa", w)]


def winding_around(rs, q) -> int:
    """Winding of the closed (r, s) polyline around the point q of A."""
    e = annulus_embedding(rs[:, 0], rs[:, 1]) - (annulus_embedding(q[0], q[1]) if q is not None else 0)
    ang = np.unwrap(np.angle(np.append(e, e[0])))
    return int(round((ang[-1] - ang[0]) / (2 * np.pi)))


@dataclass(frozen=True)
class WindingRecord:
    branch: tuple   # winding around each branch point
    core: int       # winding around the core of the annulus


def project_and_wind(curves, w: complex = W_REF, cfg: NumericConfig | None = None) -> list:
    """Winding numbers of the projections alpha~(C) around the branch points.

    The annulus is embedded in C* by exp(r + 2 pi i s); the core winding is
    the winding around 0.  A curve passing within 10 tol_geom of a branch
    point has no winding number there and raises BranchCollisionError.
    """
    cfg = cfg or NumericConfig()
    bps = branch_reference(w)
    out = []
    for C in curves:
        rs = np.asarray(C.data if isinstance(C, TracedCurve) else C)[:, :2]
        for k, b in enumerate(bps):
            if np.min(_chart_distance(rs, b)) < 10 * cfg.tol_geom:
                raise BranchCollisionError(f"curve passes through branch point {k + 1}")
        out.append(WindingRecord(tuple(winding_around(rs, b) for b in bps),
                                 winding_around(rs, None)))
    return out


def circle_around(center, radius: float, n: int = 200, z_sheet: int = 1) -> TracedCurve:
    """Test loop in A around a base point, lifted with continuous z."""
    th = 2 * np.pi * np.arange(n) / n
    rs = np.stack([center[0] + radius * np.cos(th), center[1] + radius * np.sin(th)], axis=1)
    return lift(rs, z_sheet)


def lift(rs, z_sheet: int = 1, w: complex = W_REF) -> TracedCurve:
    """Lift a polyline in A to F_a^{-1}(w) by continuing z = sqrt(w - Gamma)."""
    rs = np.asarray(rs, dtype=float)
    v = w - rs[:, 0] * np.exp(2j * np.pi * rs[:, 1])
    z = np.empty(len(rs), dtype=complex)
    z[0] = z_sheet * np.sqrt(v[0])
    for k in range(1, len(rs)):
        c = np.sqrt(v[k])
        z[k] = c if abs(c - z[k - 1]) <= abs(c + z[k - 1]) else -c
    P = np.column_stack([rs, z.real, z.imag])
    closes = abs(z[-1] - z[0]) < abs(z[-1] + z[0])
    return TracedCurve("A", P, True, {"lift_closes": bool(closes)})


# isotoped circles: arc data ---------------------------------------------

@dataclass(frozen=True)
class ArcSummary:
    """Shape of alpha~(H_1(C)), a doubled arc between the branch points."""

    start: int                 # branch point index (1-based) of the x > 0 half start
    end: int
    core_crossings: tuple      # s values (mod 1) where the half-arc crosses r = 0
    s_range: tuple
    doubling_error: float      # distance between the two halves in A
    branch_gap: float          # distance from the arc ends to the branch points


def arc_summary(C: TracedCurve, w: complex = W_REF) -> ArcSummary:
    """Describe an isotoped attaching circle through its projection to A.

    The x -> -x symmetry of C_i survives the flow, so the two halves of
    H_1(C_i) project to the same arc, traversed in opposite directions,
    whose ends are the branch points.
    """
    P = C.data
    n = len(P)
    if n % 2:
        raise ValueError("arc summary expects an even number of samples")
    bps = branch_reference(w)
    half = P[: n // 2 + 1, :2]
    other = np.roll(P[::-1, :2], 1, axis=0)[: n // 2 + 1]
    ds = (half[:, 1] - other[:, 1]) - np.round(half[:, 1] - other[:, 1])
    doubling = float(np.max(np.hypot(half[:, 0] - other[:, 0], ds)))
    ends = []
    gaps = []
    for q in (half[0], half[-1]):
        d = [float(_chart_distance(q[None, :], b)[0]) for b in bps]
        ends.append(int(np.argmin(d)) + 1)
        gaps.append(min(d))
    r = half[:, 0]
    idx = np.nonzero(np.sign(r[:-1]) * np.sign(r[1:]) < 0)[0]
    cross = []
    for k in idx:
        a = r[k] / (r[k] - r[k + 1])
        cross.append(round(float((half[k, 1] + a * (half[k + 1, 1] - half[k, 1])) % 1.0), 6))
    return ArcSummary(ends[0], ends[1], tuple(cross),
                      (float(half[:, 1].min()), float(half[:, 1].max())),
                      doubling, max(gaps))


# intersection numbers and attaching classes ---------------------------------

def _segments(P):
    """Closed polyline as segment starts (s in [0, 1)) and steps, plus z at both ends."""
    rs = P[:, :2]
    z = P[:, 2] + 1j * P[:, 3]
    nxt = np.roll(rs, -1, axis=0)
    d = nxt - rs
    d[:, 1] -= np.round(d[:, 1])
    start = rs.copy()
    start[:, 1] -= np.floor(start[:, 1])
    return start, d, z, np.roll(z, -1)


def intersection_number(P: TracedCurve, Q: TracedCurve, guard: float = 1e-9) -> int:
    """Signed count of crossings of two closed curves in F_a^{-1}(1/2).

    Crossings are found between the projected polylines in A; a projected
    crossing is a genuine one when the interpolated z values agree (same
    sheet).  Signs use the orientation pulled back from (r, s).
    """
    a0, da, za0, za1 = _segments(P.data)
    b0, db, zb0, zb1 = _segments(Q.data)
    total = 0
    for shift in (-1.0, 0.0, 1.0):
        b = b0 + np.array([0.0, shift])
        # a0 + u da = b + v db
        det = da[:, None, 0] * (-db[None, :, 1]) - da[:, None, 1] * (-db[None, :, 0])
        rhs0 = b[None, :, 0] - a0[:, None, 0]
        rhs1 = b[None, :, 1] - a0[:, None, 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            u = (rhs0 * (-db[None, :, 1]) - rhs1 * (-db[None, :, 0])) / det
            v = (da[:, None, 0] * rhs1 - da[:, None, 1] * rhs0) / det
        hit = (det != 0) & (u >= 0) & (u < 1) & (v >= 0) & (v < 1)
        for i, j in zip(*np.nonzero(hit)):
            uu, vv = u[i, j], v[i, j]
            if min(uu, 1 - uu, vv, 1 - vv) < guard:
                raise AmbiguousIntersectionError("crossing at a sample point; resample")
            zp = za0[i] + uu * (za1[i] - za0[i])
            zq = zb0[j] + vv * (zb1[j] - zb0[j])
            same, opp = abs(zp - zq), abs(zp + zq)
            if min(same, opp) > 0.5 * max(same, opp):
                raise AmbiguousIntersectionError("sheets not separated at a crossing")
            if same < opp:
                total += int(np.sign(det[i, j]) * -1)
    return total


def core_lift(sheet: int = 1, n: int = 400) -> TracedCurve:
    """The lift of the core r = 0 with z = sheet / sqrt(2)."""
    s = (np.arange(n) + 0.5) / n
    P = np.column_stack([np.zeros(n), s, np.full(n, sheet / math.sqrt(2)), np.zeros(n)])
    return TracedCurve("A", P, True, {"name": "core"})


def cut_lift(delta: float = 0.05, n: int = 2000, w: complex = W_REF) -> TracedCurve:
    """One lift of a thin oval around the straight cut joining the branch points."""
    (r1, s1), (r2, s2) = branch_reference(w)
    p, q = np.array([r1, s1]), np.array([r2, s2])
    d = q - p
    length = float(np.linalg.norm(d))
    e = d / length
    nrm = np.array([-e[1], e[0]])
    # stadium boundary: straight sides plus half circles, by arclength
    perim = 2 * length + 2 * np.pi * delta
    tt = (np.arange(n) + 0.5) / n * perim
    pts = np.empty((n, 2))
    for k, a in enumerate(tt):
        if a < length:
            pts[k] = p + a * e - delta * nrm
        elif a < length + np.pi * delta:
            th = (a - length) / delta
            pts[k] = q + delta * (-np.cos(th) * nrm + np.sin(th) * e)
        elif a < 2 * length + np.pi * delta:
            b = a - length - np.pi * delta
            pts[k] = q - b * e + delta * nrm
        else:
            th = (a - 2 * length - np.pi * delta) / delta
            pts[k] = p + delta * (np.cos(th) * nrm - np.sin(th) * e)
    C = lift(pts, 1, w)
    if not C.metadata["lift_closes"]:
        raise AssertionError("oval lift does not close")
    C.metadata["name"] = "cut"
    return C


@dataclass(frozen=True)
class AttachingClass:
    coords: tuple          # (a, b) in the basis (L, sigma * l_plus)
    with_core: int         # P . l_plus
    with_cut: int          # P . L
    basis_pairing: int     # L . l_plus


def class_of(P: TracedCurve, L: TracedCurve | None = None, core: TracedCurve | None = None) -> AttachingClass:
    """Coordinates of a closed fiber curve in H_1 of the capped fiber (a torus).

    With e1 = L and e2 = sigma * l_plus, sigma = L . l_plus = +-1, the
    class P = a e1 + b e2 has a = P . e2 and b = -(P . e1).
    """
    L = L if L is not None else cut_lift()
    core = core if core is not None else core_lift()
    sigma = intersection_number(L, core)
    if abs(sigma) != 1:
        raise AssertionError(f"reference cycles do not form a basis: L.l = {sigma}")
    pc, pl = intersection_number(P, core), intersection_number(P, L)
    return AttachingClass((sigma * pc, -pl), pc, pl, sigma)


def attaching_class(i: int, cfg: NumericConfig | None = None, n: int = 400,
                    max_refine: int = 4) -> AttachingClass:
    """Class of H_1(C_i) in the capped fiber F_a^{-1}(1/2) (a torus).

    Samples are offset from the symmetric positions so that no vertex sits
    on a reference cycle; ambiguous crossings trigger resampling.
    """
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    for _ in range(max_refine):
        C = attach_circles(0.5, n, phase=0.25)[i - 1]
        try:
            return class_of(isotopy_flow(C, 1.0, cfg))
        except AmbiguousIntersectionError:
            n *= 2
    raise AmbiguousIntersectionError(f"crossings still ambiguous with {n} samples")
