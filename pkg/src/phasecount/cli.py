"""Command-line front end.

    phasecount compute --state fock:n=2 --zeta 0.5 --m-max 4
    phasecount compare --state squeezed:r=1 --zeta 0.6 --routes cf,q,fock,closed
    phasecount sweep   --state thermal:nbar=2 --zeta 0.1:1:10 --route cf
    phasecount verify

Exit status: 0 success, 1 tolerance failure or route/representation error,
2 usage error.
"""
from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass, field
import io
import json
import sys

import numpy as np

from . import identities
from .counting import DEFAULT_M_MAX, ROUTES, DetectionSpec, RouteDomainError, compute
from .quadrature import QuadratureSpec
from .states import RepresentationUnavailable, StateError, StateSpec, coherent, fock, load_diag_csv, squeezed, thermal

SUBCOMMANDS = ("compute", "compare", "sweep", "verify")
COMPARE_TOL = 1e-7

_STATE_KEYS = {
    "coherent": {"re", "im"},
    "squeezed": {"r"},
    "thermal": {"nbar"},
    "fock": {"n"},
}


@dataclass
class RunConfig:
    subcommand: str
    state: StateSpec | None = None
    state_text: str = ""
    zeta: list = field(default_factory=list)
    m_max: int = DEFAULT_M_MAX
    routes: list = field(default_factory=lambda: ["fock"])
    routes_given: bool = False
    quad: QuadratureSpec = QuadratureSpec()
    format: str = "json"
    out: str | None = None
    tolerance: float = COMPARE_TOL


class UsageError(ValueError):
    pass


def parse_state(text):
    """Parse ``coherent:re=<f>,im=<f>``, ``squeezed:r=<f>``, ``thermal:nbar=<f>``,
    ``fock:n=<int>`` or ``diag:@<path>``."""
    kind, sep, rest = text.partition(":")
    if not sep:
        raise UsageError(f"state must look like kind:key=value, got {text!r}")
    if kind == "diag":
        if not rest.startswith("@") or len(rest) < 2:
            raise UsageError(f"diag state needs @<path>, got {rest!r}")
        try:
            return load_diag_csv(rest[1:])
        except OSError as exc:
            raise UsageError(f"cannot read {rest[1:]!r}: {exc.strerror}") from None
        except StateError as exc:
            raise UsageError(str(exc)) from None
    if kind not in _STATE_KEYS:
        raise UsageError(f"unknown state kind {kind!r}")
    values = {}
    for token in filter(None, rest.split(",")):
        key, eq, val = token.partition("=")
        if not eq or key not in _STATE_KEYS[kind]:
            raise UsageError(f"bad state parameter {token!r} for {kind}")
        if key in values:
            raise UsageError(f"duplicate state parameter {token!r}")
        try:
            values[key] = int(val) if key == "n" else float(val)
        except ValueError:
            raise UsageError(f"bad value in state parameter {token!r}") from None
    missing = _STATE_KEYS[kind] - set(values) - {"im"}
    if missing:
        raise UsageError(f"{kind} state is missing {', '.join(sorted(missing))}")
    try:
        if kind == "coherent":
            return coherent(complex(values["re"], values.get("im", 0.0)))
        if kind == "squeezed":
            return squeezed(values["r"])
        if kind == "thermal":
            return thermal(values["nbar"])
        return fock(values["n"])
    except StateError as exc:
        raise UsageError(str(exc)) from None


def _parse_zeta(text, grid):
    try:
        if grid and ":" in text:
            start, stop, num = text.split(":")
            vals = list(np.linspace(float(start), float(stop), int(num)))
        elif grid:
            vals = [float(v) for v in text.split(",") if v]
        else:
            vals = [float(text)]
    except ValueError:
        raise UsageError(f"bad zeta value {text!r}") from None
    if not vals:
        raise UsageError("empty zeta grid")
    for v in vals:
        if not 0.0 <= v <= 1.0:
            raise UsageError(f"zeta {v!r} outside [0, 1]")
    return [float(v) for v in vals]


def _parse_routes(text):
    routes = [r.strip() for r in text.split(",") if r.strip()]
    if not routes:
        raise UsageError("at least one route is required")
    for r in routes:
        if r not in ROUTES:
            raise UsageError(f"unknown route {r!r} (choose from {', '.join(ROUTES)})")
    return routes


def build_parser():
    parser = argparse.ArgumentParser(prog="phasecount", description="Photocount distributions from phase-space representations.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        if name == "verify":
            continue
        p.add_argument("--state", required=True)
        p.add_argument("--zeta", required=True, help="efficiency; sweep takes start:stop:num or a comma list")
        p.add_argument("--m-max", type=int, default=DEFAULT_M_MAX)
        if name == "compare":
            p.add_argument("--routes", default=None)
            p.add_argument("--tol", type=float, default=COMPARE_TOL)
        else:
            p.add_argument("--route", "--routes", dest="routes", default=None)
        p.add_argument("--radial-nodes", type=int, default=QuadratureSpec.radial_nodes)
        p.add_argument("--angular-nodes", type=int, default=QuadratureSpec.angular_nodes)
        p.add_argument("--refine-factor", type=int, default=QuadratureSpec.refine_factor)
    return parser


def parse_args(argv):
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(ns.subcommand, format=ns.format, out=ns.out)
    if ns.subcommand == "verify":
        return cfg
    try:
        cfg.state = parse_state(ns.state)
        cfg.state_text = ns.state
        cfg.zeta = _parse_zeta(ns.zeta, grid=ns.subcommand == "sweep")
        if not 0 <= ns.m_max <= 60:
            raise UsageError(f"--m-max {ns.m_max} outside [0, 60]")
        cfg.m_max = ns.m_max
        if ns.routes is not None:
            cfg.routes = _parse_routes(ns.routes)
            cfg.routes_given = True
        elif ns.subcommand == "compare":
            cfg.routes = list(ROUTES)
        if ns.subcommand in ("compute", "sweep") and len(cfg.routes) != 1:
            raise UsageError(f"{ns.subcommand} takes exactly one route")
        try:
            cfg.quad = QuadratureSpec(ns.radial_nodes, ns.angular_nodes, ns.refine_factor)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if ns.subcommand == "compare":
            if not ns.tol > 0:
                raise UsageError("--tol must be positive")
            cfg.tolerance = ns.tol
    except UsageError as exc:
        parser.error(str(exc))
    return cfg


# -- output -------------------------------------------------------------------

def _record(cfg, dist):
    return {
        "state": cfg.state_text,
        "zeta": float(dist.zeta),
        "route": dist.route,
        "m_max": cfg.m_max,
        "probabilities": [float(p) for p in dist.probabilities],
        "total": dist.total,
        "error_estimate": float(dist.error_estimate),
        "residual_negative": float(dist.residual_negative),
    }


def dumps_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv_rows(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "p", "route", "zeta"])
    for rec in records:
        for m, p in enumerate(rec["probabilities"]):
            w.writerow([m, repr(p), rec["route"], repr(rec["zeta"])])
    return buf.getvalue()


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(exc):
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return 1


def run(cfg):
    """Execute a parsed configuration; returns the process exit status."""
    if cfg.subcommand == "verify":
        report = identities.run_all()
        ok = all(r["pass"] for r in report)
        if cfg.format == "json":
            text = dumps_json({"checks": report, "pass": ok})
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["name", "max_error", "tolerance", "pass"])
            for r in report:
                w.writerow([r["name"], repr(r["max_error"]), repr(r["tolerance"]), r["pass"]])
            text = buf.getvalue()
        _emit(cfg, text)
        return 0 if ok else 1

    errors = (RouteDomainError, RepresentationUnavailable)
    try:
        if cfg.subcommand == "compute":
            det = DetectionSpec(cfg.zeta[0], cfg.m_max)
            rec = _record(cfg, compute(cfg.state, cfg.routes[0], det, cfg.quad))
            _emit(cfg, dumps_json(rec) if cfg.format == "json" else _csv_rows([rec]))
            return 0
        if cfg.subcommand == "sweep":
            recs = [_record(cfg, compute(cfg.state, cfg.routes[0], DetectionSpec(z, cfg.m_max), cfg.quad))
                    for z in cfg.zeta]
            obj = {"state": cfg.state_text, "route": cfg.routes[0], "m_max": cfg.m_max, "results": recs}
            _emit(cfg, dumps_json(obj) if cfg.format == "json" else _csv_rows(recs))
            return 0
    except errors as exc:
        return _fail(exc)

    # compare
    det = DetectionSpec(cfg.zeta[0], cfg.m_max)
    recs, skipped = [], []
    for route in cfg.routes:
        try:
            recs.append(_record(cfg, compute(cfg.state, route, det, cfg.quad)))
        except errors as exc:
            if cfg.routes_given:
                return _fail(exc)
            skipped.append({"route": route, "reason": str(exc)})
    dev = 0.0
    for i, a in enumerate(recs):
        for b in recs[i + 1:]:
            dev = max(dev, float(np.max(np.abs(np.subtract(a["probabilities"], b["probabilities"])))))
    ok = dev <= cfg.tolerance
    if cfg.format == "json":
        obj = {"state": cfg.state_text, "zeta": det.zeta, "m_max": cfg.m_max, "tolerance": cfg.tolerance,
               "results": recs, "skipped": skipped, "max_deviation": dev, "pass": ok}
        _emit(cfg, dumps_json(obj))
    else:
        _emit(cfg, _csv_rows(recs))
    return 0 if ok else 1


def main(argv=None):
    cfg = parse_args(sys.argv[1:] if argv is None else argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
