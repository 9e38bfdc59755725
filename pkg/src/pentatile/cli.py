"""Command-line entry point: ``pentatile <command> ...``.

Exit status: 0 on success, 1 when a validation fails or a construction is
geometrically impossible (for example a chirality conflict), 2 on usage
errors and unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import generators as gen
from .errors import (
    ChiralityConflictError,
    DocumentError,
    DomainError,
    PentatileError,
    PreconditionError,
)
from .geometry import PentagonParams, angles_from_params, realize
from .io import read_document, write_document
from .model import PentagonTiling, RhombicPatch
from .render import RenderStyle, render_svg
from .rhombus import Chirality
from .tables import emit_tables
from .validate import validate


class UsageError(Exception):
    pass


def _pair(text):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from None
    return x, y


def _pentagon_option(text):
    try:
        angle, _, n = text.partition("=")
        return float(angle), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ANGLE=N, got {text!r}") from None


def pentagons_for_patch(patch: RhombicPatch, theta: float, overrides=()):
    """Map each acute rhombus angle to a pentagon whose A corner fits the
    corner the patch marks as A; ``overrides`` pins (angle, n) choices."""
    table = {}
    for angle, n in overrides:
        table[angle] = PentagonParams.from_n(n, theta)
    for r in patch.rhombi:
        a = r.proto.angle_at_A
        acute = min(a, 180.0 - a)
        if any(abs(acute - k) <= 1e-6 for k in table):
            continue
        n = 360.0 / a
        if abs(n - round(n)) <= 1e-9 and round(n) >= 3:
            table[acute] = PentagonParams.from_n(int(round(n)), theta)
        else:
            table[acute] = PentagonParams(90.0 - a / 2.0, theta)
    return table


def _emit(doc, args):
    if args.output:
        write_document(doc, args.output)
    else:
        from .io import dumps

        sys.stdout.write(dumps(doc))


def _maybe_decorate(patch, args):
    if args.theta is None:
        return patch
    table = pentagons_for_patch(patch, args.theta, args.pentagon or ())
    return gen.decorate_patch(patch, table, seed=(args.seed_id, Chirality(args.seed_chirality)), tol=args.tol)


def cmd_shape(args):
    if (args.n is None) == (args.alpha is None):
        raise UsageError("give exactly one of --n and --alpha")
    params = PentagonParams.from_n(args.n, args.theta) if args.n is not None else PentagonParams(args.alpha, args.theta)
    ang = angles_from_params(params)
    shape = realize(params)
    info = {
        "alpha": params.alpha,
        "theta": params.theta,
        "n": params.n,
        "A": ang.A,
        "B": ang.B,
        "C": ang.C,
        "D": ang.D,
        "E": ang.E,
        "delta": ang.delta,
        "e": shape.edge_e,
        "class": shape.shape_class.value,
        "equilateral": shape.equilateral,
        "vertices": shape.vertices.tolist(),
    }
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        print(f"A={ang.A:.6g} B={ang.B:.6g} C={ang.C:.6g} D={ang.D:.6g} E={ang.E:.6g}")
        print(f"delta={ang.delta:.6g} e={shape.edge_e:.6g}")
        print(f"class={shape.shape_class.name}" + (" (equilateral)" if shape.equilateral else ""))
    return 0


def cmd_tile(args):
    kind = args.kind
    if kind == "wedge":
        patch = gen.wedge_rotational(args.n, args.rings)
    elif kind == "belt":
        angle = args.angle if args.angle is not None else args.n
        if angle is None:
            raise UsageError("belt needs --n or --angle")
        joins = [j for j in (args.joins or "").split(",") if j]
        joins = joins or None
        patch = gen.belt_patch(angle, args.belts, args.length, joins)
    elif kind == "hole":
        patch = gen.hole_rosette(args.m, args.k, args.rings)
    elif kind == "zonogon":
        patch = gen.zonogon_rosette(args.q)
    elif kind == "star":
        patch = gen.star_hexagon()
    elif kind == "subdivide":
        if not args.input:
            raise UsageError("subdivide needs an input patch file")
        patch = read_document(args.input)
        if not isinstance(patch, RhombicPatch):
            raise UsageError("subdivide works on rhombic patch documents")
        patch = gen.subdivide(patch, args.f)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    _emit(_maybe_decorate(patch, args), args)
    return 0


def cmd_decorate(args):
    patch = read_document(args.input)
    if not isinstance(patch, RhombicPatch):
        raise UsageError("decorate expects a rhombic patch document")
    _emit(_maybe_decorate(patch, args), args)
    return 0


def _tiling(path):
    doc = read_document(path)
    if not isinstance(doc, PentagonTiling):
        raise UsageError("expected a pentagon tiling document")
    return doc


def _snap(doc, point, rel=1e-3):
    """Nearest tile vertex to ``point`` when it lies within ``rel`` times the
    shortest edge, so centres typed with a few decimals still hit."""
    polys = doc.polygons()
    if not polys:
        return point
    pts = np.concatenate(polys)
    shortest = min(float(np.min(np.linalg.norm(np.roll(p, -1, 0) - p, axis=1))) for p in polys)
    d = np.linalg.norm(pts - np.asarray(point), axis=1)
    i = int(np.argmin(d))
    return tuple(pts[i]) if d[i] <= rel * shortest else point


def cmd_flip(args):
    doc = _tiling(args.input)
    for c in args.center:
        doc = gen.flip_unit(doc, _snap(doc, c), tol=args.tol)
    _emit(doc, args)
    return 0


def cmd_fill(args):
    _emit(gen.fill_hole(_tiling(args.input), tol=args.tol), args)
    return 0


def cmd_validate(args):
    doc = read_document(args.input)
    report = validate(doc, tol=args.tol, probe_center=args.probe_center, probe_radius=args.probe_radius)
    text = report.to_json() if args.json else report.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.ok else 1


def cmd_render(args):
    doc = read_document(args.input)
    style = RenderStyle(show_rhombi=args.rhombi, show_e_edges=args.e_edges).updated(args.style or "")
    text = render_svg(doc, style, args.output)
    if not args.output:
        sys.stdout.write(text)
    return 0


def cmd_tables(args):
    rows = emit_tables(args.which)
    if args.output:
        fh = open(args.output, "w", newline="", encoding="utf-8")
    else:
        fh = sys.stdout
    try:
        csv.writer(fh, lineterminator="\n").writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _decorate_flags(p):
    p.add_argument("--theta", type=float, help="decorate with pentagons of this theta (degrees)")
    p.add_argument(
        "--pentagon",
        type=_pentagon_option,
        action="append",
        metavar="ANGLE=N",
        help="use the fold-N pentagon on rhombi with this acute angle",
    )
    p.add_argument("--seed-id", type=int, default=0)
    p.add_argument("--seed-chirality", choices=[c.value for c in Chirality], default="anterior")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pentatile", description="Pentagon tilings from decorated rhombic patches.")
    parser.add_argument("--tol", type=float, default=1e-6, help="assembly tolerance (default 1e-6)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shape", help="angles, odd edge and class of one pentagon")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("tile", help="generate a rhombic patch, optionally decorated")
    p.add_argument("kind", choices=["wedge", "belt", "hole", "zonogon", "subdivide", "star"])
    p.add_argument("input", nargs="?", help="patch document (subdivide only)")
    p.add_argument("--n", type=int)
    p.add_argument("--angle", type=float, help="belt rhombus angle in degrees")
    p.add_argument("--rings", type=int, default=3)
    p.add_argument("--belts", type=int, default=2)
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--joins", help="comma-separated translate/reflect")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--q", type=int)
    p.add_argument("--f", type=int, default=2)
    p.add_argument("-o", "--output")
    _decorate_flags(p)
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("decorate", help="turn a rhombic patch into a pentagon tiling")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    _decorate_flags(p)
    p.set_defaults(func=cmd_decorate)

    p = sub.add_parser("flip", help="mirror the hexagonal unit around a vertex")
    p.add_argument("input")
    p.add_argument("--center", type=_pair, action="append", required=True, metavar="X,Y")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("fill-hole", help="close a square or hexagonal hole")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("validate", help="check a document and print a report")
    p.add_argument("input")
    p.add_argument("--probe-radius", type=float)
    p.add_argument("--probe-center", type=_pair, metavar="X,Y")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="write an SVG picture")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--style", help="comma-separated key=value overrides, e.g. posterior_fill=#999")
    p.add_argument("--rhombi", action="store_true", help="overlay the underlying rhombi")
    p.add_argument("--e-edges", action="store_true", help="highlight the odd edges")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("tables", help="recompute an angle table as CSV")
    p.add_argument("which", type=int, choices=[1, 2, 3])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tables)

    for p in sub.choices.values():
        p.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="assembly tolerance")
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ChiralityConflictError as exc:
        print(f"error: ChiralityConflict: {exc}", file=sys.stderr)
        return 1
    except (UsageError, DomainError, PreconditionError, DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PentatileError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    try:
        code = cli_main()
        sys.stdout.flush()
    except BrokenPipeError:
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
