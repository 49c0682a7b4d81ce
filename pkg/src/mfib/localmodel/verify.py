"""The numerical suite behind ``mfib localmodel verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import appendix, flow, models, transport
from .config import NumericConfig


@dataclass(frozen=True)
class Check:
    name: str
    value: str
    passed: bool


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def _below(name, value, tol):
    return Check(name, f"{_fmt(value)} < {tol:g}", bool(value < tol))


def random_regular_values(cfg: NumericConfig, n: int = 100) -> np.ndarray:
    rng = cfg.rng(5)
    mag = 10.0 ** rng.uniform(-9, 0, n)
    return mag * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def fiber_checks(cfg: NumericConfig) -> list:
    ws = random_regular_values(cfg)
    nm = {len(models.branch_points("Fm", w, 1e-9)) for w in ws}
    na = {len(models.branch_points("Fa", w, 1e-9)) for w in ws}
    chis = (models.fiber_euler("Fm", 1), models.fiber_euler("Fa", 0.5))
    conv = models.convexity_check(1, 0.05, cfg)
    return [
        Check("branch_counts", f"Fm={sorted(nm)} Fa={sorted(na)}", nm == {1} and na == {2}),
        Check("fiber_chi", f"Fm={chis[0]} Fa={chis[1]}", chis == (-1, -2)),
        Check("convexity_margin", f"{conv.margin:.6f} >= {conv.bound:.6f}",
              conv.ok and conv.margin >= conv.bound - cfg.tol_identity),
    ]


def transport_checks(cfg: NumericConfig) -> list:
    rep = transport.monodromy_transport(cfg)
    return [
        _below("transport_shift", rep.s_shift_error, 1e-8),
        _below("transport_oracle", rep.oracle_error, 1e-8),
        _below("transport_rotation", rep.rotation_error, cfg.tol_geom),
        _below("transport_fixed", rep.fixed_error, cfg.tol_geom),
        _below("transport_fiber", rep.fiber_error, cfg.tol_geom),
    ]


def flow_checks(cfg: NumericConfig) -> list:
    tol = cfg.tol_geom
    out = []
    C = flow.attach_circles(0.5)
    field_o = field_e = decay = level = drift = 0.0
    margins, windings = [], []
    for Ci in C:
        for t in (0.25, 0.5, 0.75, 1.0):
            H = flow.isotopy_flow(Ci, t, cfg)
            r = H.metadata["report"]
            field_o = max(field_o, r.field_omega)
            field_e = max(field_e, r.field_eta)
            decay = max(decay, r.eta_error, r.omega_error)
            drift = max(drift, r.gamma_re_drift)
            if t == 1.0:
                P = H.data
                Fa = models.eval_array("Fa", P[:, 0], P[:, 1], P[:, 2] + 1j * P[:, 3])
                level = max(level, float(np.max(np.abs(Fa - flow.W_REF))))
            fr = flow.tangency_framing_check(H if t < 1.0 else Ci, cfg)
            margins.append(min(fr.tangent_margin, fr.normal_margin, fr.dy_margin))
            windings.append(fr.relative_winding)
    ids = [flow.tangency_framing_check(Ci, cfg) for Ci in C]
    id_err = max(max(f.identity_error_r, f.identity_error_y) for f in ids)
    out += [
        _below("flow_V_omega", field_o, tol),
        _below("flow_V_eta", field_e, tol),
        _below("flow_eta_decay", decay, tol),
        _below("flow_level", level, tol),
        _below("flow_gamma_real_drift", drift, tol),
        _below("framing_identities", id_err, cfg.tol_identity),
        Check("independence_margin", f"{_fmt(min(margins))} > 0", min(margins) > 0),
        Check("framing_winding", f"{sorted(set(windings))}", set(windings) == {0}),
    ]
    a1 = flow.attaching_class(1, cfg)
    a2 = flow.attaching_class(2, cfg)
    det = a1.coords[0] * a2.coords[1] - a1.coords[1] * a2.coords[0]
    out.append(Check("attaching_classes", f"C1={a1.coords} C2={a2.coords} det={det}",
                     a1.coords != (0, 0) and abs(det) == 2))
    return out


def appendix_checks(cfg: NumericConfig) -> list:
    scan = appendix.critical_scan("Feps", cfg)
    scan_m = appendix.critical_scan("Fm", cfg.with_(grid=min(cfg.grid, 64)))
    saji = appendix.saji_classify(cfg.eps, cfg)
    gam = appendix.gamma_injectivity(cfg.eps, cfg)
    ids = appendix.ae_identity_check(cfg)
    return [
        Check("critical_fm", f"components={scan_m.components} residual={_fmt(scan_m.residual)}",
              scan_m.components == 1 and scan_m.residual < cfg.tol_geom),
        Check("critical_feps", f"components={scan.components} residual={_fmt(scan.residual)}",
              scan.components == 1 and scan.residual < 1e-5),
        Check("cusps", f"{len(saji.cusps)} error={_fmt(saji.cusp_error)}",
              len(saji.cusps) == 3 and saji.cusp_error < 1e-4),
        _below("saji_H", saji.H_error, 1e-10),
        _below("saji_dH", saji.dH_error, 1e-10),
        Check("gamma_injective", f"min_separation={_fmt(gam.min_separation)}",
              gam.injective and gam.min_separation > 0 and gam.closed_form_error < 1e-12),
        _below("ae_identities", max(ids.errors.values()), cfg.tol_identity),
    ]


def run_suite(cfg: NumericConfig) -> list:
    if not cfg.eps > 0 or math.isnan(cfg.eps):
        raise ValueError("eps must be positive")
    return fiber_checks(cfg) + transport_checks(cfg) + flow_checks(cfg) + appendix_checks(cfg)
