"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
3 evaluation domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

from ._grid import check_region, grid_points
from .errors import DomainError, ExprSyntaxError
from .fields import (
    CanonicalField,
    ExprField,
    check_geodesic_field,
    check_total_geodesy,
    geodesic_residual,
    total_geodesy_criterion,
    twist_mismatch,
)
from .flow import flow_integral_curve, integrate_geodesic, speed_squared, trace_leaves
from .geometry import TwistedMetric, christoffels, curvature, metric_inner, metric_norm

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

REPORT_COLUMNS = ("x", "y", "f", "g", "Gxx_x", "Gxx_y", "Gyy_x", "Gyy_y", "Gxy_x", "Gxy_y",
                  "c", "d", "ip", "K", "fy_minus_gx")
CHECK_COLUMNS = ("x", "y", "residual_norm", "unit_defect", "fy_minus_gx", "ric", "div_term", "criterion")

SVG_SIZE = 800


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    f_src: str = ""
    g_src: str = ""
    region: tuple = (-1.0, 1.0, -1.0, 1.0)
    grid: int = 21
    tol: float = 1e-9
    step: float = 1e-3
    steps: int = 1000
    seeds: list = field(default_factory=list)
    start: tuple | None = None
    direction: tuple | None = None
    a_src: str | None = None
    b_src: str | None = None
    mode: str = "field"
    format: str = "csv"
    out: str | None = None
    svg: str | None = None

    def validate(self):
        if not self.f_src or not self.g_src:
            raise UsageError("both --f and --g are required")
        try:
            check_region(self.region)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if self.grid < 2:
            raise UsageError("--grid must be at least 2")
        if not self.step > 0:
            raise UsageError("--step must be positive")
        if self.steps < 1:
            raise UsageError("--steps must be at least 1")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if (self.a_src is None) != (self.b_src is None):
            raise UsageError("--a and --b must be given together")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")


# -- argument parsing ---------------------------------------------------------

def _floats(text, count=None):
    try:
        vals = tuple(float(v) for v in str(text).split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} numbers, got {text!r}")
    return vals


def _pair(text):
    return _floats(text, 2)


def _quad(text):
    return _floats(text, 4)


def _seeds(text):
    return [_pair(chunk) for chunk in str(text).split(";") if chunk.strip()]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--f", dest="f_src", metavar="EXPR")
    common.add_argument("--g", dest="g_src", metavar="EXPR")
    common.add_argument("--region", type=_quad, metavar="x0,x1,y0,y1")
    common.add_argument("--grid", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("csv", "json"))

    fieldopts = argparse.ArgumentParser(add_help=False)
    fieldopts.add_argument("--field", choices=("canonical",))
    fieldopts.add_argument("--a", dest="a_src", metavar="EXPR")
    fieldopts.add_argument("--b", dest="b_src", metavar="EXPR")

    parser = argparse.ArgumentParser(prog="dtwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("report", parents=[common], help="metric, connection and curvature on a grid")
    sub.add_parser("check", parents=[common, fieldopts], help="geodesic field and foliation checks")
    fl = sub.add_parser("flow", parents=[common, fieldopts], help="integral curves, geodesics, leaves")
    fl.add_argument("--mode", choices=("field", "geodesic", "leaves"))
    fl.add_argument("--start", type=_pair, metavar="x,y")
    fl.add_argument("--dir", dest="direction", type=_pair, metavar="vx,vy")
    fl.add_argument("--step", type=float)
    fl.add_argument("--steps", type=int)
    fl.add_argument("--seeds", type=_seeds, metavar="x1,y1;x2,y2")
    fl.add_argument("--svg", metavar="PATH")
    return parser


_CONFIG_ALIASES = {"f": "f_src", "g": "g_src", "a": "a_src", "b": "b_src", "dir": "direction"}


def config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
        known = set(asdict(cfg))
        for key, value in data.items():
            key = _CONFIG_ALIASES.get(key, key)
            if key not in known:
                raise UsageError(f"unknown config key {key!r}")
            if key in ("region", "start", "direction") and value is not None:
                value = tuple(float(v) for v in value)
            if key == "seeds":
                value = [tuple(float(c) for c in s) for s in value]
            setattr(cfg, key, value)
    for key in asdict(cfg):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


# -- output -------------------------------------------------------------------

def _fmt(v):
    if isinstance(v, float):
        return format(v + 0.0, ".17g")  # + 0.0 folds -0 into 0
    return str(v)


def render_csv(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render_json(cfg, columns, rows, summary, passed):
    doc = {
        "config": _config_doc(cfg),
        "rows": [dict(zip(columns, row)) for row in rows],
        "summary": summary,
        "pass": passed,
    }
    return json.dumps(doc, indent=1) + "\n"


def _config_doc(cfg):
    doc = asdict(cfg)
    for key, value in doc.items():
        if isinstance(value, tuple):
            doc[key] = list(value)
    return doc


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _output(cfg, columns, rows, summary, passed):
    if cfg.format == "json":
        _emit(cfg, render_json(cfg, columns, rows, summary, passed))
    else:
        _emit(cfg, render_csv(columns, rows))
        if cfg.out:
            print(json.dumps(summary), file=sys.stderr)


def render_svg(curves, seeds, region):
    x0, x1, y0, y1 = region
    sx = SVG_SIZE / (x1 - x0) if x1 > x0 else 1.0
    sy = SVG_SIZE / (y1 - y0) if y1 > y0 else 1.0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
    ]
    for i, (curve, seed) in enumerate(zip(curves, seeds)):
        pts = [f"{(x - x0) * sx:.3f} {(y1 - y) * sy:.3f}" for x, y in zip(curve.x, curve.y)]
        lines.append(f"<!-- leaf {i} seed ({seed[0]!r}, {seed[1]!r}) -->")
        lines.append(f'<path d="M {" L ".join(pts)}" fill="none" stroke="black" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------

def _field(cfg, m):
    if cfg.a_src is not None:
        return ExprField(cfg.a_src, cfg.b_src)
    return CanonicalField(m)


def cmd_report(cfg: RunConfig) -> int:
    m = TwistedMetric(cfg.f_src, cfg.g_src)
    rows = []
    max_c = max_d = max_mis = 0.0
    for p in grid_points(cfg.region, cfg.grid):
        f, g = m.values(p)
        gam = christoffels(m, p)
        cp = curvature(m, p)
        K = cp.ip / (f * f * g * g)
        mis = twist_mismatch(m, p)
        rows.append((p[0], p[1], f, g, *gam.as_tuple(), cp.c, cp.d, cp.ip, K, mis))
        max_c, max_d = max(max_c, abs(cp.c)), max(max_d, abs(cp.d))
        max_mis = max(max_mis, abs(mis))
    summary = {
        "max_abs_c": max_c,
        "max_abs_d": max_d,
        "max_abs_fy_minus_gx": max_mis,
        "flat": max(max_c, max_d) <= cfg.tol,
    }
    _output(cfg, REPORT_COLUMNS, rows, summary, True)
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    m = TwistedMetric(cfg.f_src, cfg.g_src)
    U = _field(cfg, m)
    report = check_geodesic_field(m, U, cfg.region, cfg.grid, cfg.tol)
    unit = report.sup_unit_defect <= 1e-9
    crit = check_total_geodesy(m, U, cfg.region, cfg.grid, cfg.tol) if unit else None

    rows = []
    for p in grid_points(cfg.region, cfg.grid):
        r = geodesic_residual(m, p, U)
        a, b = U.at(p)
        row = [p[0], p[1], metric_norm(m, p, r), abs(metric_inner(m, p, (a, b), (a, b)) - 1.0),
               twist_mismatch(m, p)]
        if crit is not None:
            tg = total_geodesy_criterion(m, p, U)
            row += [tg.ric, tg.div_term, tg.criterion]
        else:
            row += [math.nan] * 3
        rows.append(tuple(row))

    summary = {
        "sup_residual": report.sup_residual,
        "sup_unit_defect": report.sup_unit_defect,
        "worst_point": list(report.worst_point),
        "geodesic": report.passed,
        "sup_criterion": crit.sup_criterion if crit else None,
        "sup_ric": crit.sup_ric if crit else None,
        "sup_div_term": crit.sup_div if crit else None,
        "criterion_worst_point": list(crit.worst_point) if crit else None,
        "totally_geodesic": crit.passed if crit else None,
    }
    if cfg.format == "json":
        rows = [tuple(None if isinstance(v, float) and math.isnan(v) else v for v in r) for r in rows]
    _output(cfg, CHECK_COLUMNS, rows, summary, report.passed)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: sup_residual={report.sup_residual!r} sup_unit_defect={report.sup_unit_defect!r} "
          f"worst_point={report.worst_point!r}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_flow(cfg: RunConfig) -> int:
    m = TwistedMetric(cfg.f_src, cfg.g_src)
    h, n = cfg.step, cfg.steps
    if cfg.mode == "leaves":
        seeds = cfg.seeds or ([cfg.start] if cfg.start else [])
        if not seeds:
            raise UsageError("leaves mode requires --seeds or --start")
        leaves = trace_leaves(m, _field(cfg, m), seeds, h, n)
        rows = [(i, t, x, y) for i, c in enumerate(leaves) for t, x, y in zip(c.t, c.x, c.y)]
        rows = [(i, float(t), float(x), float(y)) for i, t, x, y in rows]
        errors = {i: c.error for i, c in enumerate(leaves) if c.error}
        summary = {"leaves": len(leaves), "errors": errors}
        if cfg.svg:
            with open(cfg.svg, "w") as fh:
                fh.write(render_svg(leaves, seeds, cfg.region))
        _output(cfg, ("leaf", "t", "x", "y"), rows, summary, not errors)
        for i, msg in errors.items():
            print(f"leaf {i}: {msg}", file=sys.stderr)
        return EXIT_DOMAIN if errors else EXIT_OK

    if cfg.start is None:
        raise UsageError(f"{cfg.mode} mode requires --start")
    if cfg.mode == "geodesic":
        if cfg.direction is None:
            raise UsageError("geodesic mode requires --dir")
        curve = integrate_geodesic(m, cfg.start, cfg.direction, h, n)
        energy = speed_squared(m, curve)
        summary = {
            "end": list(curve.end),
            "initial_speed_squared": float(energy[0]),
            "final_speed_squared": float(energy[-1]),
            "max_energy_drift": float(abs(energy - energy[0]).max()),
        }
        columns = ("t", "x", "y", "vx", "vy")
        rows = [tuple(float(v) for v in r) for r in zip(curve.t, curve.x, curve.y, curve.vx, curve.vy)]
    else:
        curve = flow_integral_curve(m, _field(cfg, m), cfg.start, h, n)
        summary = {"end": list(curve.end)}
        columns = ("t", "x", "y")
        rows = [tuple(float(v) for v in r) for r in zip(curve.t, curve.x, curve.y)]
    if cfg.svg:
        with open(cfg.svg, "w") as fh:
            fh.write(render_svg([curve], [cfg.start], cfg.region))
    _output(cfg, columns, rows, summary, True)
    return EXIT_OK


COMMANDS = {"report": cmd_report, "check": cmd_check, "flow": cmd_flow}


_VALUE_FLAGS = {"--f", "--g", "--a", "--b", "--region", "--start", "--dir", "--seeds", "--tol", "--step"}


def _attach_negative_values(argv):
    # argparse reads "--region -1,1,-1,1" as two options; glue such values on
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt and nxt.startswith("-") and not nxt.startswith("--"):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"dtwist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExprSyntaxError as exc:
        print(f"dtwist {args.command}: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"dtwist {args.command}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
