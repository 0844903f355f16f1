"""Parallel transport along geodesics: the Tn, Ct and Eu fields.

Transport from p to q decomposes a tangent into its component along the
projective line of p, q (horizontal) and the metric-orthogonal rest
(vertical); the horizontal part rides the tance-normalized spread field
and the vertical part its square-root-normalized cousin.  Crossing the
absolute keeps the horizontal rule; the vertical rule survives only
over C, where the square root of a negative tance is fixed on the
positive imaginary branch.  Euclidean lines use the Eu field instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (CrossAbsoluteError, EuclideanLineError,
                     OrthogonalPointsError, PreconditionError)
from .projective import (LineClass, ProjPoint, is_isotropic, line_classify,
                         proj_para_map, proj_perp, proj_perp_map,
                         require_nonisotropic, same_point, tance)
from .scalars import C
from .spaces import LinearMap, check_same_space, form, form_re
from .tangent import Tangent, observe, spread

SAME_COMPONENT = "same-component"
CROSS_ABSOLUTE = "cross-absolute"

#: relative size below which a vertical component counts as absent
_VERTICAL_TOL = 1e-10


@dataclass(frozen=True)
class TransportResult:
    """Transported tangent plus the square-root branch that produced it."""

    tangent: Tangent
    branch: str


def _tance_or_orthogonal(p: ProjPoint, x: ProjPoint) -> float:
    hpx = form(p.rep, x.rep)
    scale = p.space.j_norm * p.rep.aux_norm() * x.rep.aux_norm()
    if abs(hpx) <= p.space.iso_tol * max(scale, 1e-300):
        raise OrthogonalPointsError("evaluation point is orthogonal to the footpoint")
    return tance(p, x)


def field_tn(t: Tangent, x: ProjPoint) -> Tangent:
    """Spread field divided by the tance to the footpoint."""
    ta = _tance_or_orthogonal(t.foot, x)
    return spread(t, x).scale(1.0 / ta)


def sqrt_tance_branch(ta: float) -> complex:
    """Square root of a tance: positive real, or positive imaginary across the
    absolute."""
    if ta > 0:
        return complex(math.sqrt(ta), 0.0)
    return complex(0.0, math.sqrt(-ta))


def field_ct(t: Tangent, x: ProjPoint) -> Tangent:
    """Spread field divided by the square root of the tance.

    Negative tance (footpoint and evaluation point in different
    components) is admitted over C only.
    """
    ta = _tance_or_orthogonal(t.foot, x)
    value = spread(t, x)
    if ta > 0:
        return value.scale(1.0 / math.sqrt(ta))
    if t.space.field != C:
        raise CrossAbsoluteError(
            "square-root transport across the absolute needs field C")
    return value.times_complex(1.0 / sqrt_tance_branch(ta))


def field_eu(s: Tangent, x: ProjPoint) -> Tangent:
    """Euclidean transport field: half a projector sandwich plus the spread."""
    p = s.foot
    check_same_space(s.map, x.rep)
    require_nonisotropic(x)
    raw = proj_perp_map(p).data @ proj_para_map(x).data @ s.map.data
    combined = s.map.data + 0.5 * raw
    return observe(x, LinearMap(s.space, combined))


def hv_decompose(t: Tangent, q: ProjPoint):
    """Split t at p into its part along the line through p, q and the rest.

    The split projects through w = perp-part of q at p; it exists exactly
    when that vector is nonisotropic, i.e. when the line is noneuclidean.
    """
    p = t.foot
    check_same_space(t.map, q.rep)
    require_nonisotropic(p)
    if same_point(p, q):
        raise PreconditionError("no line: the two points coincide",
                                code="coincident-points")
    w = proj_perp(p, q.rep)
    w_point = ProjPoint(w)
    if is_isotropic(w_point):
        raise EuclideanLineError(
            "the line through the points is euclidean or null; no decomposition")
    pw = proj_para_map(w_point)
    h = Tangent(p, pw @ t.map)
    v = t - h
    return h, v


def transport(t: Tangent, q: ProjPoint) -> TransportResult:
    """Parallel transport of t along the geodesic segment from its foot to q."""
    p = t.foot
    check_same_space(t.map, q.rep)
    require_nonisotropic(p)
    require_nonisotropic(q)
    if same_point(p, q):
        return TransportResult(t, SAME_COMPONENT)
    klass = line_classify(p.rep, q.rep)
    if klass is LineClass.EUCLIDEAN:
        return TransportResult(field_eu(t, q), SAME_COMPONENT)
    ta = _tance_or_orthogonal(p, q)
    h, v = hv_decompose(t, q)
    if ta > 0:
        moved = field_tn(h, q) + field_ct(v, q)
        return TransportResult(moved, SAME_COMPONENT)
    moved = field_tn(h, q)
    vertical_size = v.map.frob_norm()
    if vertical_size > _VERTICAL_TOL * max(t.map.frob_norm(), 1e-300):
        if t.space.field != C:
            raise CrossAbsoluteError(
                "vertical transport across the absolute is defined over C only")
        moved = moved + field_ct(v, q)
    return TransportResult(moved, CROSS_ABSOLUTE)


def tance_derivative(p: ProjPoint, t: Tangent, x: ProjPoint) -> float:
    """Derivative of tance(p, -) at x along the field spread from t."""
    check_same_space(p.rep, t.map, x.rep)
    require_nonisotropic(p)
    hxx = require_nonisotropic(x)
    tx = t.map @ x.rep
    return -2.0 * tance(p, x) * (form_re(tx, x.rep) / hxx)
