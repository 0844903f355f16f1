"""Levi-Civita connection on spread fields, curvature, sectional curvature.

Everything here is closed-form operator algebra: the derivative of a
spread field, the derivative of the projectors along a tangent
direction, the curvature tensor as a signed sum of triple products, and
the sectional curvature both as a trace quotient and through the scalar
invariant of the two image vectors.  The matching finite-difference
oracles live in the oracle module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePlaneError, PreconditionError
from .projective import ProjPoint, proj_para_map, proj_perp_map, require_nonisotropic
from .scalars import REAL_DIM, Scalar, conj
from .spaces import LinearMap, adjoint, check_same_space, form, form_re
from .tangent import Tangent, metric, observe, spread


def nabla_spread(s: Tangent, t: Tangent, x: ProjPoint) -> Tangent:
    """Derivative at x of the field spread from s along the field spread from t.

    Vanishes at the common footpoint, which is what makes spread fields
    the geodesic normal fields of this geometry.
    """
    check_same_space(s.map, t.map, x.rep)
    require_nonisotropic(x)
    pi = proj_perp_map(x)
    pi_prime = proj_para_map(x)
    raw = s.map @ pi @ t.map - t.map @ pi_prime @ s.map
    return observe(x, raw)


def projector_derivative(p: ProjPoint, t: Tangent) -> LinearMap:
    """First-order change of the parallel projector along t: equals t + t*."""
    check_same_space(p.rep, t.map)
    require_nonisotropic(p)
    return t.map + adjoint(t.map)


def curvature(t1: Tangent, t2: Tangent, s: Tangent) -> Tangent:
    """Curvature operator R(t1,t2)s = s t1* t2 + t2 t1* s - s t2* t1 - t1 t2* s."""
    check_same_space(t1.map, t2.map, s.map)
    a1 = adjoint(t1.map)
    a2 = adjoint(t2.map)
    raw = (s.map @ a1 @ t2.map + t2.map @ a1 @ s.map
           - s.map @ a2 @ t1.map - t1.map @ a2 @ s.map)
    return observe(t1.foot, raw)


def _image_vectors(t1: Tangent, t2: Tangent):
    """Normalized image vectors v_j with <v_j, v_j> = +-1 and the invariant k."""
    p = t1.foot
    hpp = require_nonisotropic(p)
    v1 = (t1.map @ p.rep).scale(1.0 / hpp)
    v2 = (t2.map @ p.rep).scale(1.0 / hpp)
    sigmas = []
    normalized = []
    for v in (v1, v2):
        vv = form_re(v, v)
        scale = p.space.j_norm * v.aux_norm() ** 2
        if abs(vv) <= 1e-9 * max(scale, 1e-300):
            raise PreconditionError(
                "tangent with isotropic image vector", code="isotropic-tangent")
        sigmas.append(1 if vv > 0 else -1)
        normalized.append(v.scale(1.0 / np.sqrt(abs(vv))))
    k = form(normalized[0], normalized[1])
    return normalized[0], normalized[1], sigmas[0], sigmas[1], k


def sectional_values(t1: Tangent, t2: Tangent):
    """Trace-quotient and closed-form sectional curvature of span{t1, t2}."""
    check_same_space(t1.map, t2.map)
    sign = t1.space.metric_sign

    _, _, s1, s2, k = _image_vectors(t1, t2)
    re_k = k.a
    im2 = abs(k) ** 2 - re_k * re_k
    denom = s1 * s2 - re_k * re_k
    if abs(denom) < 1e-9:
        raise DegeneratePlaneError("metric is degenerate on the tangent plane")
    closed = sign * (1.0 + 3.0 * im2 / denom)

    g11 = metric(t1, t1)
    g22 = metric(t2, t2)
    g12 = metric(t1, t2)
    gram = g11 * g22 - g12 * g12
    num = metric(curvature(t1, t2, t1), t2)
    traced = num / gram
    return traced, closed


def sectional(t1: Tangent, t2: Tangent) -> float:
    """Sectional curvature; the two independent evaluations must agree."""
    traced, closed = sectional_values(t1, t2)
    if abs(traced - closed) > 1e-9 * max(1.0, abs(traced), abs(closed)):
        raise PreconditionError(
            f"sectional curvature evaluations disagree: {traced} vs {closed}",
            code="sectional-disagreement")
    return traced


#: rows of the curvature table as (form class, metric class) -> interval of
#: sectional curvature divided by the metric sign
_TABLE = {
    ("indefinite", "indefinite"): (-np.inf, 1.0),
    ("definite", "definite"): (1.0, 4.0),
    ("degenerate", "definite"): (4.0, 4.0),
    ("indefinite", "definite"): (4.0, np.inf),
}

_ROW_TOL = 1e-9


@dataclass(frozen=True)
class CurvatureRow:
    """Classified tangent plane: form class on v1 K + v2 K, metric class on W,
    the sectional value and whether it lands in the row's interval."""

    form_class: str
    metric_class: str
    interval: tuple
    sectional: float
    in_row: bool


def curvature_class(t1: Tangent, t2: Tangent) -> CurvatureRow:
    """Place the plane of t1, t2 in the sectional-curvature table."""
    space = t1.space
    sign = space.metric_sign
    v1, v2, s1, s2, k = _image_vectors(t1, t2)

    if space.field == "R":
        form_class = "real"
    else:
        d = s1 * s2 - abs(k) ** 2
        if abs(d) <= _ROW_TOL:
            form_class = "degenerate"
        elif d > 0:
            form_class = "definite"
        else:
            form_class = "indefinite"

    re_k = k.a
    gram = s1 * s2 - re_k * re_k
    if abs(gram) <= 1e-9:
        raise DegeneratePlaneError("metric is degenerate on the tangent plane")
    metric_class = "definite" if gram > 0 else "indefinite"

    value = sectional(t1, t2)
    normalized = value / sign

    if form_class == "real":
        interval = (1.0, 1.0)
        in_row = abs(normalized - 1.0) <= _ROW_TOL
    else:
        interval = _TABLE.get((form_class, metric_class))
        if interval is None:
            in_row = False
            interval = (np.nan, np.nan)
        else:
            lo, hi = interval
            in_row = (normalized >= lo - _ROW_TOL) and (normalized <= hi + _ROW_TOL)
    return CurvatureRow(form_class, metric_class, interval, value, in_row)
