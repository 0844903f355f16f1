"""JSON wire formats for spaces, scalars, points, maps and tangents.

Scalars serialize as coefficient arrays: R -> [a], C -> [a, b],
H -> [a, b, c, d].  Spaces accept either a signature list or a full
hermitian form matrix.  Tangents are observed on load, so a slightly
off-footing map entering through the wire is legal.
"""

from __future__ import annotations

import json

from .errors import ValidationError
from .projective import ProjPoint
from .scalars import REAL_DIM, Scalar, as_scalar
from .spaces import ClassicSpace, LinearMap, Vector
from .tangent import Tangent, observe


def round12(x: float) -> float:
    """Collapse to 12 significant digits; normalizes -0.0 away."""
    value = float(f"{float(x):.12g}")
    return 0.0 if value == 0.0 else value


def scalar_to_json(s: Scalar):
    return [round12(c) for c in s.coeffs]


def parse_space(obj) -> ClassicSpace:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ValidationError("space must be a JSON object", code="schema")
    field = obj.get("field")
    if field not in ("R", "C", "H"):
        raise ValidationError("space needs a field tag R, C or H", code="schema")
    sign = int(obj.get("metric_sign", 1))
    iso_tol = float(obj.get("iso_tol", 1e-9))
    if "signature" in obj:
        return ClassicSpace.from_signature(field, obj["signature"], sign, iso_tol)
    if "form" in obj:
        return ClassicSpace.from_form(field, obj["form"], sign, iso_tol)
    raise ValidationError("space needs 'signature' or 'form'", code="schema")


def space_to_json(space: ClassicSpace):
    out = {"field": space.field, "metric_sign": space.metric_sign}
    if space.signature is not None:
        out["signature"] = list(space.signature)
    else:
        m = space.m
        out["form"] = [[scalar_to_json(space_entry(space, i, k))
                        for k in range(space.dim)] for i in range(space.dim)]
    if space.iso_tol != 1e-9:
        out["iso_tol"] = space.iso_tol
    return out


def space_entry(space: ClassicSpace, i, k) -> Scalar:
    from .scalars import from_block
    m = space.m
    return from_block(space.field, space.j[i * m:(i + 1) * m, k * m:(k + 1) * m])


def parse_vector(space: ClassicSpace, obj) -> Vector:
    if isinstance(obj, dict) and "rep" in obj:
        obj = obj["rep"]
    if not isinstance(obj, (list, tuple)):
        raise ValidationError("vector must be a list of scalars", code="schema")
    return space.vector([as_scalar(space.field, entry) for entry in obj])


def parse_point(space: ClassicSpace, obj) -> ProjPoint:
    return ProjPoint(parse_vector(space, obj))


def vector_to_json(v: Vector):
    return [scalar_to_json(s) for s in v.entries()]


def point_to_json(p: ProjPoint):
    return {"rep": vector_to_json(p.rep)}


def parse_map(space: ClassicSpace, obj) -> LinearMap:
    if not isinstance(obj, (list, tuple)) or len(obj) != space.dim:
        raise ValidationError("map must be a square matrix of scalars", code="schema")
    return space.linear_map(obj)


def map_to_json(t: LinearMap):
    return [[scalar_to_json(s) for s in row] for row in t.entries()]


def parse_tangent(space: ClassicSpace, obj) -> Tangent:
    if not isinstance(obj, dict) or "foot" not in obj or "map" not in obj:
        raise ValidationError("tangent needs 'foot' and 'map'", code="schema")
    foot = parse_point(space, obj["foot"])
    raw = parse_map(space, obj["map"])
    return observe(foot, raw)


def tangent_to_json(t: Tangent):
    return {"foot": point_to_json(t.foot), "map": map_to_json(t.map)}
