"""Command-line front end.

JSON in, JSON out: arguments may be file paths or inline JSON.  Exit
codes: 0 success, 2 validation problem, 3 mathematical precondition
failure; numbers are printed with 12 significant digits and output is
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import verify as verify_mod
from .chyperbolic import (BisectorSegment, bisector_angle, goldman_u,
                          meridional_transport, triangle_area)
from .connection import curvature, curvature_class, sectional_values
from .errors import KernelError, PreconditionError, ValidationError
from .geodesics import (bisector_normal, circle_classify, contains, length,
                        segment_tangent, through_points)
from .projective import ProjPoint, classify, line_classify, tance
from .scalars import arg
from .serialize import (map_to_json, parse_map, parse_point, parse_space,
                        parse_tangent, point_to_json, round12,
                        tangent_to_json, vector_to_json)
from .tangent import observe
from .transport import CROSS_ABSOLUTE, field_eu, transport


def _load_json(text_or_path):
    if isinstance(text_or_path, str) and os.path.exists(text_or_path):
        with open(text_or_path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(text_or_path)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not a file and not valid JSON: {exc}",
                              code="bad-json")


def _rounded(obj):
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def _emit(payload, indent):
    text = json.dumps(_rounded(payload), indent=indent, sort_keys=False)
    sys.stdout.write(text + "\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="classic",
        description="coordinate-free kernel for classic projective geometries")
    parser.add_argument("--json-indent", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--space", required=True)
        p.add_argument("--tolerance", type=float, default=None)
        return p

    p = add("classify")
    p.add_argument("--p", required=True)

    p = add("tance")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)

    p = add("distance")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)

    geo = sub.add_parser("geodesic")
    geo_sub = geo.add_subparsers(dest="subcommand", required=True)
    for name in ("through", "classify", "contains", "tangent"):
        g = geo_sub.add_parser(name)
        g.add_argument("--space", required=True)
        g.add_argument("--tolerance", type=float, default=None)
        if name in ("through", "classify", "contains"):
            g.add_argument("--g1", required=True)
            g.add_argument("--g2", required=True)
        if name == "contains":
            g.add_argument("--x", required=True)
        if name == "tangent":
            g.add_argument("--p", required=True)
            g.add_argument("--q", required=True)

    curv = sub.add_parser("curvature")
    curv_sub = curv.add_subparsers(dest="subcommand", required=True)
    for name in ("tensor", "sectional", "table-check"):
        c = curv_sub.add_parser(name)
        c.add_argument("--space", required=True)
        c.add_argument("--tolerance", type=float, default=None)
        c.add_argument("--t1", required=True)
        c.add_argument("--t2", required=True)
        if name == "tensor":
            c.add_argument("--s", required=True)

    p = add("transport")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--tangent", required=True)
    p.add_argument("--allow-cross-absolute", action="store_true")

    p = add("eu-transport")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--tangent", required=True)

    chg = sub.add_parser("chg")
    chg_sub = chg.add_subparsers(dest="subcommand", required=True)
    a = chg_sub.add_parser("area")
    for flag in ("--p1", "--p2", "--p3"):
        a.add_argument(flag, required=True)
    g = chg_sub.add_parser("goldman")
    g.add_argument("--p", required=True)
    g.add_argument("--v1", required=True)
    g.add_argument("--v2", required=True)
    b = chg_sub.add_parser("bisector-angle")
    b.add_argument("--p", required=True)
    b.add_argument("--v1", required=True)
    b.add_argument("--v2", required=True)
    b.add_argument("--q", required=True)
    m = chg_sub.add_parser("meridional")
    m.add_argument("--p1", required=True)
    m.add_argument("--p2", required=True)
    m.add_argument("--q1", required=True)
    for c in (a, g, b, m):
        c.add_argument("--space", required=True)
        c.add_argument("--tolerance", type=float, default=None)

    bis = sub.add_parser("bisector")
    bis_sub = bis.add_subparsers(dest="subcommand", required=True)
    n = bis_sub.add_parser("normal")
    n.add_argument("--space", required=True)
    n.add_argument("--tolerance", type=float, default=None)
    n.add_argument("--q", required=True)
    n.add_argument("--g1", required=True)
    n.add_argument("--g2", required=True)

    v = sub.add_parser("verify")
    v.add_argument("--seed", type=int, default=0)

    return parser


def _space_of(args):
    space = parse_space(_load_json(args.space))
    if getattr(args, "tolerance", None):
        space.iso_tol = float(args.tolerance)
    return space


def _point(space, raw):
    return parse_point(space, _load_json(raw))


def _run(args):
    cmd = args.command
    if cmd == "verify":
        return verify_mod.run_verification(seed=args.seed)

    space = _space_of(args)

    if cmd == "classify":
        return {"class": classify(_point(space, args.p)).value}

    if cmd == "tance":
        return {"result": tance(_point(space, args.p), _point(space, args.q))}

    if cmd == "distance":
        p, q = _point(space, args.p), _point(space, args.q)
        value = length(p, q)
        try:
            klass = line_classify(p.rep, q.rep).value
        except KernelError:
            klass = "Coincident"
        return {"result": value, "line_class": klass}

    if cmd == "geodesic":
        if args.subcommand == "through":
            geo = through_points(_point(space, args.g1), _point(space, args.g2))
            return {"w1": vector_to_json(geo.w1), "w2": vector_to_json(geo.w2),
                    "class": geo.klass.value}
        if args.subcommand == "classify":
            g1, g2 = _point(space, args.g1), _point(space, args.g2)
            out = {"circle_class": circle_classify(g1.rep, g2.rep).value}
            try:
                out["line_class"] = line_classify(g1.rep, g2.rep).value
            except KernelError:
                out["line_class"] = None
            return out
        if args.subcommand == "contains":
            geo = through_points(_point(space, args.g1), _point(space, args.g2))
            return {"result": contains(geo, _point(space, args.x))}
        geo_tan = segment_tangent(_point(space, args.p), _point(space, args.q))
        return tangent_to_json(geo_tan)

    if cmd == "curvature":
        t1 = parse_tangent(space, _load_json(args.t1))
        t2 = parse_tangent(space, _load_json(args.t2))
        if args.subcommand == "tensor":
            s = parse_tangent(space, _load_json(args.s))
            return tangent_to_json(curvature(t1, t2, s))
        if args.subcommand == "sectional":
            traced, closed = sectional_values(t1, t2)
            return {"result": traced, "closed_form": closed,
                    "agreement": abs(traced - closed)}
        row = curvature_class(t1, t2)
        lo, hi = row.interval
        return {"form_class": row.form_class, "metric_class": row.metric_class,
                "interval": [None if math.isinf(lo) else lo,
                             None if math.isinf(hi) else hi],
                "sectional": row.sectional, "in_row": row.in_row}

    if cmd == "transport":
        t = parse_tangent(space, _load_json(args.tangent))
        src = _point(space, args.src)
        dst = _point(space, args.dst)
        if not (t.foot.rep - src.rep).is_zero(1e-9):
            from .projective import same_point
            if not same_point(t.foot, src):
                raise ValidationError("tangent foot differs from --from point",
                                      code="foot-mismatch")
        result = transport(t, dst)
        if result.branch == CROSS_ABSOLUTE and not args.allow_cross_absolute:
            raise PreconditionError(
                "endpoints lie in different components; pass "
                "--allow-cross-absolute to continue", code="cross-absolute-blocked")
        return {"tangent": tangent_to_json(result.tangent), "branch": result.branch}

    if cmd == "eu-transport":
        t = parse_tangent(space, _load_json(args.tangent))
        src = _point(space, args.src)
        dst = _point(space, args.dst)
        from .projective import LineClass
        if line_classify(src.rep, dst.rep) is not LineClass.EUCLIDEAN:
            raise PreconditionError("eu-transport needs an euclidean line",
                                    code="euclidean-line")
        return {"tangent": tangent_to_json(field_eu(t, dst))}

    if cmd == "chg":
        if args.subcommand == "area":
            pts = [_point(space, getattr(args, name)) for name in ("p1", "p2", "p3")]
            return {"result": triangle_area(*pts)}
        if args.subcommand == "goldman":
            polar = _point(space, args.p)
            b1 = BisectorSegment(polar, _point(space, args.v1))
            b2 = BisectorSegment(polar, _point(space, args.v2))
            u = goldman_u(b1, b2)
            return {"u": [u.a, u.b], "abs": abs(u), "arg": arg(u)}
        if args.subcommand == "bisector-angle":
            polar = _point(space, args.p)
            b1 = BisectorSegment(polar, _point(space, args.v1))
            b2 = BisectorSegment(polar, _point(space, args.v2))
            return {"result": bisector_angle(b1, b2, _point(space, args.q))}
        moved = meridional_transport(_point(space, args.p1),
                                     _point(space, args.p2),
                                     _point(space, args.q1))
        return point_to_json(moved)

    if cmd == "bisector":
        normal = bisector_normal(_point(space, args.q), _point(space, args.g1),
                                 _point(space, args.g2))
        return tangent_to_json(normal)

    raise ValidationError(f"unknown command {cmd}", code="bad-command")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    indent = args.json_indent
    try:
        result = _run(args)
    except PreconditionError as exc:
        _emit({"ok": False, "error": {"code": exc.code, "message": str(exc)}}, indent)
        return 3
    except (ValidationError, KernelError) as exc:
        code = getattr(exc, "code", "validation")
        _emit({"ok": False, "error": {"code": code, "message": str(exc)}}, indent)
        return 2
    except Exception as exc:  # never a traceback on user input
        _emit({"ok": False, "error": {"code": "internal-error",
                                      "message": str(exc)}}, indent)
        return 2
    _emit({"ok": True, "result": result}, indent)
    return 0


if __name__ == "__main__":
    sys.exit(main())
