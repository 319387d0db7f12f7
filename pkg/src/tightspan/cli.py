"""Command-line entry point: ``tightspan <command> <scene> ...``.

A scene argument is a path to a JSON scene file or ``@name`` for a shipped
fixture (``@fig1_arc``, ``@fig3_points``, ``@fig7_contour``, ``@square``,
``@lshape``).  Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import CHECKS, run_checks
from .geom import Point, ShapeError, ShapeSet
from .hatch import (CommutationError, NotPathConnected, double_hatch, hatch_seq, hatch_x,
                    hatch_y, HatchResult)
from .raster import compare_membership, frame_for, raster_double_hatch
from .retract import RetractionError, retract_point
from .scene import (SchemaError, Scene, hatch_result_to_dict, is_region_document, load_builtin,
                    load_json, region_from_dict, region_to_dict, scene_from_dict)
from .svg import Witnesses, emit_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PANELS = {"A": None, "Lx": "x", "Ly": "y", "L": "both"}


class UsageError(Exception):
    pass


def _read_doc(arg: str):
    if arg.startswith("@"):
        return load_builtin(arg[1:])
    try:
        text = Path(arg).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    doc = load_json(text)
    return region_from_dict(doc) if is_region_document(doc) else scene_from_dict(doc)


def _scene(arg: str) -> Scene:
    doc = _read_doc(arg)
    if not isinstance(doc, Scene):
        raise UsageError(f"{arg} is a region file; this command needs a scene")
    return doc


def _xy(text: str) -> Point:
    try:
        x, y = (float(t) for t in text.split(","))
        return Point(x, y)
    except (ValueError, ShapeError):
        raise argparse.ArgumentTypeError(f"expected X,Y with finite numbers, got {text!r}") from None


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v
    return conv


def _write(path: str, text: str):
    Path(path).write_text(text)


def _print_json(doc):
    print(json.dumps(doc, indent=1))


def _hatched(shape: ShapeSet, how: str) -> HatchResult:
    if how == "x":
        return hatch_x(shape)
    if how == "y":
        return hatch_y(shape)
    if how in ("xy", "yx"):
        return hatch_seq(shape, how)
    return HatchResult(double_hatch(shape), ShapeSet())


# --- commands -------------------------------------------------------------------

def cmd_hatch(args) -> int:
    sc = _scene(args.scene)
    res = _hatched(sc.shapes, args.dir)
    doc = hatch_result_to_dict(res)
    if args.out:
        _write(args.out, json.dumps(doc, indent=1) + "\n")
    else:
        _print_json(doc)
    if args.svg:
        _write(args.svg, emit_svg([res, sc.shapes]))
    return EXIT_OK


def cmd_tightspan(args) -> int:
    sc = _scene(args.scene)
    region = double_hatch(sc.shapes)
    doc = region_to_dict(region)
    if args.out:
        _write(args.out, json.dumps(doc, indent=1) + "\n")
    else:
        _print_json(doc)
    if args.svg:
        _write(args.svg, emit_svg([region, sc.shapes]))
    return EXIT_OK


def cmd_retract(args) -> int:
    sc = _scene(args.scene)
    region = double_hatch(sc.shapes)
    trace = retract_point(region, args.point)
    _print_json(trace.to_json())
    if args.svg:
        _write(args.svg, emit_svg([region, sc.shapes, trace]))
    return EXIT_OK


def cmd_verify(args) -> int:
    sc = _scene(args.scene)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown or not names:
        raise UsageError(f"unknown check {unknown[0] if unknown else '(none)'}; choose from {', '.join(CHECKS)}")
    spacing = args.spacing or sc.sample_spacing or 1e-3
    report = run_checks(sc.shapes, names, seed=args.seed, spacing=spacing, samples=args.samples)
    report["scene"] = sc.name
    _print_json(report)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_raster_check(args) -> int:
    sc = _scene(args.scene)
    region = double_hatch(sc.shapes)
    x0, y0, x1, y1 = sc.shapes.bbox()
    res = args.resolution / max(x1 - x0, y1 - y0, 1e-12)
    frame = frame_for((x0, y0, x1, y1), res)
    bm = raster_double_hatch(sc.shapes, res, "xy", frame)
    agree = compare_membership(region, bm, args.band)
    report = {"scene": sc.name, "pixels": [bm.width, bm.height], "band": args.band,
              "threshold": args.threshold, **agree.to_json()}
    report["pass"] = agree.agreement >= args.threshold
    _print_json(report)
    if args.pgm:
        Path(args.pgm).write_bytes(bm.to_pgm())
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_render(args) -> int:
    doc = _read_doc(args.scene)
    items = []
    if isinstance(doc, HatchResult):
        items.append(doc)
    else:
        how = PANELS[args.panel]
        if how is not None:
            items.append(_hatched(doc.shapes, how))
        items.append(doc.shapes)
    if args.witness:
        items.append(Witnesses(tuple(args.witness)))
    Path(args.svg).write_text(emit_svg(items))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tightspan",
                                description="Tight spans of planar sets under the taxicab metric.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    h = sub.add_parser("hatch", help="hatch a scene along x, y or both")
    h.add_argument("scene")
    h.add_argument("--dir", required=True, choices=["x", "y", "xy", "yx", "both"],
                   help="xy = x first then y; both = connected double hatching")
    h.add_argument("--out", help="write the region JSON here instead of stdout")
    h.add_argument("--svg")
    h.set_defaults(func=cmd_hatch)

    t = sub.add_parser("tightspan", help="double hatching of a path-connected scene")
    t.add_argument("scene")
    t.add_argument("--out")
    t.add_argument("--svg")
    t.set_defaults(func=cmd_tightspan)

    r = sub.add_parser("retract", help="retract a point onto the double hatching")
    r.add_argument("scene")
    r.add_argument("--point", required=True, type=_xy, metavar="X,Y")
    r.add_argument("--svg")
    r.set_defaults(func=cmd_retract)

    v = sub.add_parser("verify", help="run property suites and print a JSON report")
    v.add_argument("scene")
    v.add_argument("--checks", default=",".join(CHECKS[:6]), help=f"comma list from {','.join(CHECKS)}")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--spacing", type=_positive(float), help="sample spacing for the isometry check")
    v.add_argument("--samples", type=_positive(int), help="override each suite's sample count")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("raster-check", help="compare against the brute-force raster hatching")
    c.add_argument("scene")
    c.add_argument("--resolution", type=_positive(int), default=1024, help="pixels along the longer side")
    c.add_argument("--band", type=int, default=2)
    c.add_argument("--threshold", type=float, default=0.999)
    c.add_argument("--pgm", help="dump the raster as a PGM image")
    c.set_defaults(func=cmd_raster_check)

    d = sub.add_parser("render", help="draw a scene or region file as SVG")
    d.add_argument("scene", help="scene file, @fixture or region JSON")
    d.add_argument("--svg", required=True)
    d.add_argument("--panel", choices=sorted(PANELS), default="A",
                   help="A = the set alone, Lx / Ly / L = with that hatching underneath")
    d.add_argument("--witness", type=_xy, action="append", metavar="X,Y", help="extra dot (repeatable)")
    d.set_defaults(func=cmd_render)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, SchemaError, FileNotFoundError) as exc:
        print(f"tightspan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotPathConnected, CommutationError, RetractionError, ShapeError) as exc:
        print(f"tightspan: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run_cli())
