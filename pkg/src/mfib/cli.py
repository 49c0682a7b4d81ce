"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.resources import files
from pathlib import Path

from . import cover, fibration, formats, mcg
from .localmodel.config import NumericConfig, default_seed

PASS, FAIL = "PASS", "FAIL"


class UsageError(Exception):
    pass


class Report:
    """Ordered key/value lines; checks carry a PASS/FAIL status."""

    def __init__(self):
        self.items = []

    def add(self, key, value):
        self.items.append((key, value, None))

    def check(self, key, value, ok: bool):
        self.items.append((key, value, PASS if ok else FAIL))

    @property
    def ok(self) -> bool:
        return all(s != FAIL for _, _, s in self.items)

    def text(self) -> str:
        return "".join(f"{k}: {v}" + (f" ... {s}" if s else "") + "\n" for k, v, s in self.items)

    def record(self) -> dict:
        return {k: (v if s is None else {"value": v, "status": s}) for k, v, s in self.items}

    def json(self) -> str:
        return json.dumps(self.record(), sort_keys=False, separators=(", ", ": ")) + "\n"


def text_from_record(rec: dict) -> str:
    """Rebuild the text report from a JSON record."""
    out = []
    for k, v in rec.items():
        if isinstance(v, dict):
            out.append(f"{k}: {v['value']} ... {v['status']}\n")
        else:
            out.append(f"{k}: {v}\n")
    return "".join(out)


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _matrix_text(M) -> str:
    return ",".join("".join(str(int(x)) for x in row) for row in M)


def run_relcheck(path) -> Report:
    try:
        w = formats.parse_word(_read(path))
    except formats.FormatError as exc:
        raise UsageError(str(exc)) from exc
    R = mcg.rep_word(w)
    rep = Report()
    rep.add("genus", w.genus)
    rep.add("word", str(w))
    rep.add("rep", _matrix_text(R))
    rep.check("identity", "yes" if mcg.is_identity(R) else "no", mcg.is_identity(R))
    rep.add("orthogonal", "yes" if mcg.is_orthogonal_mod2(R) else "no")
    for i in range(1, w.genus):
        ok = mcg.check_square_relation(w.genus, i)
        rep.check(f"square_relation_u{i}", "holds (mod-2 necessary condition)" if ok
                  else "violated", ok)
    return rep


def _load_model(text):
    try:
        f = formats.parse_factorization(text)
    except formats.FormatError as exc:
        raise UsageError(str(exc)) from exc
    return fibration.build(f.base, f.genus, f.entries)


def run_invariants(path) -> Report:
    rep = Report()
    try:
        m = _load_model(_read(path))
    except fibration.FactorizationError as exc:
        rep.check("monodromy_check", str(exc), False)
        return rep
    for k, v in fibration.summary(m).items():
        rep.add(k, v)
    for flag in m.flags:
        rep.add("flag", flag)
    return rep


def _cover_report(fact_text, diagram_text, rep: Report):
    m = _load_model(fact_text)
    try:
        p = cover.transcribe(cover.parse_transcription(diagram_text))
    except cover.PresentationError as exc:
        raise UsageError(str(exc)) from exc
    reduced, moves = cover.reduce_presentation(p)
    h = cover.betti_report(fibration.double_cover(m), p)
    for k, v in h.as_dict().items():
        rep.add(k, v)
    rep.add("reduced_presentation", f"{reduced.one_handle_count}x{reduced.two_handle_count} "
            f"after {len(moves)} cancellations")
    return m, h


def run_cover(fact, diagram) -> Report:
    rep = Report()
    try:
        _cover_report(_read(fact), _read(diagram), rep)
    except fibration.FactorizationError as exc:
        rep.check("monodromy_check", str(exc), False)
    except cover.PresentationError as exc:
        rep.check("consistency", str(exc), False)
    return rep


# Published invariants of the two examples.  For the genus-2 example the
# first homology is Z/2: the fundamental group of the cover of the genus-3
# example is that group free product Z, and the abelianization is Z + Z/2.
EXAMPLE_TARGETS = {
    "x0": {"chi": 2, "handles": "1,2,4,2,1", "cover_chi": 4, "betti": "1,0,2,0,1", "h1": "Z/2"},
    "x1": {"chi": 0, "cover_chi": 0, "betti": "1,1,0,1,1", "h1": "Z + Z/2"},
}


def run_examples(name) -> Report:
    if name not in EXAMPLE_TARGETS:
        raise UsageError(f"unknown example {name!r}")
    data = files("mfib") / "data"
    fact, diagram = (data / f"{name}.fact").read_text(), (data / f"{name}.diagram").read_text()
    rep = Report()
    rep.add("example", name)
    m, h = _cover_report(fact, diagram, Report())
    got = dict(fibration.summary(m))
    got.update(h.as_dict())
    for key, want in EXAMPLE_TARGETS[name].items():
        rep.check(f"target_{key}", f"{got[key]} (expected {want})", str(got[key]) == str(want))
    return rep


def run_localmodel(mode, cfg: NumericConfig, out=None) -> Report:
    from .localmodel import verify

    if not cfg.eps > 0:
        raise UsageError("eps must be positive (eps = 0 is the degenerate unperturbed model)")
    if cfg.eps > 0.1:
        raise UsageError("eps must lie in (0, 0.1]")
    rep = Report()
    if mode == "verify":
        rep.add("seed", cfg.seed)
        rep.add("eps", f"{cfg.eps:g}")
        for c in verify.run_suite(cfg):
            rep.check(c.name, c.value, c.passed)
        return rep
    from .localmodel import plotting

    out = Path(out or ".")
    try:
        paths = plotting.render_all(out, cfg)
    except OSError as exc:
        raise UsageError(f"cannot write to {out}: {exc}") from exc
    for p in paths:
        rep.add("wrote", p.name)
    return rep


def _config(args) -> NumericConfig:
    seed = args.seed if args.seed is not None else default_seed()
    kw = {"seed": seed}
    if args.tol is not None:
        kw["tol_geom"] = args.tol
    if args.grid is not None:
        kw["grid"] = args.grid
    try:
        if args.eps is not None:
            if not args.eps > 0:
                raise UsageError("eps must be positive (eps = 0 is the degenerate unperturbed model)")
            kw["eps"] = args.eps
        return NumericConfig(**kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="geometric tolerance (default 1e-6)")
    common.add_argument("--grid", type=int, help="grid points per axis")
    common.add_argument("--eps", type=float, help="perturbation parameter (default 0.01)")
    common.add_argument("--seed", type=int, help="random seed (fallback: MFIB_SEED, then 0)")
    common.add_argument("--json", action="store_true", help="print a single-line JSON record")
    common.add_argument("--out", help="output directory for plots")

    p = argparse.ArgumentParser(prog="mfib", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("relcheck", parents=[common], help="mod-2 check of a word file")
    s.add_argument("word_file")
    s = sub.add_parser("invariants", parents=[common], help="handle counts and Euler characteristics")
    s.add_argument("factorization")
    s = sub.add_parser("cover", parents=[common], help="homology of the orientation double cover")
    s.add_argument("factorization")
    s.add_argument("diagram")
    s = sub.add_parser("localmodel", parents=[common], help="numerical suite or plots")
    s.add_argument("mode", choices=["verify", "plot"])
    s = sub.add_parser("examples", parents=[common], help="reproduce the bundled examples")
    s.add_argument("name", choices=sorted(EXAMPLE_TARGETS))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "relcheck":
            rep = run_relcheck(args.word_file)
        elif args.command == "invariants":
            rep = run_invariants(args.factorization)
        elif args.command == "cover":
            rep = run_cover(args.factorization, args.diagram)
        elif args.command == "localmodel":
            rep = run_localmodel(args.mode, cfg, args.out)
        else:
            rep = run_examples(args.name)
    except UsageError as exc:
        print(f"mfib: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.json() if args.json else rep.text())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
