"""Deterministic SVG rendering of the local-model pictures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import appendix, flow  # noqa: E402
from .config import NumericConfig  # noqa: E402

PRECISION = 1e-4


@dataclass
class Artifact:
    """One drawable layer: a polyline (closed or open) or a point set."""

    kind: str                 # "line" or "points"
    xy: np.ndarray            # (n, 2)
    label: str = ""
    closed: bool = False
    style: dict = field(default_factory=dict)


def _rounded(xy):
    return np.round(np.asarray(xy, dtype=float) / PRECISION) * PRECISION


def render_svg(artifacts, path, title: str = "", xlabel: str = "", ylabel: str = "") -> Path:
    """Write the artifacts to an SVG file with fixed canvas and rounded data."""
    artifacts = list(artifacts)
    if not artifacts:
        raise ValueError("nothing to render: empty artifact list")
    path = Path(path)
    if path.parent and not path.parent.exists():
        raise OSError(f"directory {path.parent} does not exist")
    with plt.rc_context({"svg.hashsalt": "mfib", "svg.fonttype": "none",
                         "path.simplify": False}):
        fig, ax = plt.subplots(figsize=(5, 5), dpi=100)
        for a in artifacts:
            xy = _rounded(a.xy)
            if a.kind == "line":
                if a.closed:
                    xy = np.vstack([xy, xy[:1]])
                ax.plot(xy[:, 0], xy[:, 1], label=a.label or None, lw=1.2, **a.style)
            elif a.kind == "points":
                ax.plot(xy[:, 0], xy[:, 1], ls="none", marker="o", ms=4,
                        label=a.label or None, **a.style)
            else:
                raise ValueError(f"unknown artifact kind {a.kind!r}")
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if any(a.label for a in artifacts):
            ax.legend(loc="upper right", fontsize=8)
        try:
            fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
        finally:
            plt.close(fig)
    return path


def gamma_artifacts(eps: float, n: int = 2000) -> list:
    th = np.arange(n) * math.pi / n
    g = appendix.gamma_curve(th, eps)
    cusp_th = np.array(appendix.CUSPS_EXPECTED)
    c = appendix.gamma_curve(cusp_th, eps)
    return [Artifact("line", np.column_stack([g.real, g.imag]), "critical values", True),
            Artifact("points", np.column_stack([c.real, c.imag]), "cusps")]


def attach_artifacts(cfg: NumericConfig | None = None, n: int = 400) -> list:
    """Projections to A of the isotoped attaching circles, drawn in the
    (s, r) strip, with the branch points of F_a^{-1}(1/2)."""
    out = []
    for i, C in enumerate(flow.attach_circles(0.5, n), start=1):
        H = flow.isotopy_flow(C, 1.0, cfg)
        half = H.data[: n // 2 + 1]
        out.append(Artifact("line", np.column_stack([half[:, 1] % 1.0, half[:, 0]]),
                            f"H_1(C_{i})"))
        out.append(Artifact("line", np.column_stack([C.data[:, 1], C.data[:, 0]]),
                            f"C_{i}", True, {"ls": "--"}))
    bp = np.array(flow.branch_reference())
    out.append(Artifact("points", np.column_stack([bp[:, 1], bp[:, 0]]), "branch points"))
    return out


def fiber_artifacts(n: int = 400) -> list:
    """Branch data of F_a^{-1}(1/2): branch points, core and the cut oval."""
    s = np.linspace(0.0, 1.0, n)
    core = np.column_stack([s, np.zeros(n)])
    oval = flow.cut_lift(n=n).data
    bp = np.array(flow.branch_reference())
    return [Artifact("line", core, "core r = 0"),
            Artifact("line", np.column_stack([oval[:, 1] % 1.0, oval[:, 0]]), "cut loop", True),
            Artifact("points", np.column_stack([bp[:, 1], bp[:, 0]]), "branch points")]


def render_all(out_dir, cfg: NumericConfig | None = None) -> list:
    cfg = cfg or NumericConfig()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        render_svg(gamma_artifacts(cfg.eps), out_dir / "gamma.svg",
                   f"critical values, eps = {cfg.eps:g}", "Re", "Im"),
        render_svg(attach_artifacts(cfg), out_dir / "attach.svg",
                   "attaching circles over A", "s", "r"),
        render_svg(fiber_artifacts(), out_dir / "fiber.svg",
                   "branch data of the fiber over 1/2", "s", "r"),
    ]
