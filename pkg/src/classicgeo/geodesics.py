"""Geodesics as real 2-planes carrying a real, nonvanishing restricted form.

A geodesic is stored through a spanning pair of representatives whose
three pairwise form products are real; the circle it cuts out in the
projective space is parametrized by w1 cos(theta) + w2 sin(theta).
Membership and tangency are decided by the two triple-product
equations, evaluated without reordering factors so the quaternionic
case stays unambiguous.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import (CoincidentPointsError, EuclideanLineError,
                     OrthogonalPointsError, PreconditionError, TanceRangeError,
                     ValidationError)
from .projective import (LineClass, ProjPoint, in_k_span, is_isotropic,
                         line_classify, proj_perp, require_nonisotropic,
                         same_point, tance)
from .scalars import H, Scalar, conj, inv, to_block, unit_blocks
from .spaces import (LinearMap, Vector, check_same_space, form, form_re,
                     rank_one)
from .tangent import Tangent, observe


class CircleClass(Enum):
    HYPERCYCLE = "Hypercycle"
    METRIC_CIRCLE = "MetricCircle"
    HOROCYCLE = "Horocycle"
    ABSOLUTE = "Absolute"


class Geodesic:
    """Real 2-plane W = w1 R + w2 R with real restricted form."""

    __slots__ = ("w1", "w2", "klass")

    def __init__(self, w1: Vector, w2: Vector):
        space = check_same_space(w1, w2)
        tol = space.iso_tol
        scale = space.j_norm * w1.aux_norm() * w2.aux_norm()
        h11, h22, h12 = form(w1, w1), form(w2, w2), form(w1, w2)
        for value in (h11, h22, h12):
            if abs(value - conj(value)) > 2e-12 * max(scale, 1e-300):
                raise ValidationError("form is not real on the spanning pair",
                                      code="form-not-real")
        if max(abs(h11), abs(h22), abs(h12)) <= tol * scale:
            raise ValidationError("form vanishes identically on the plane",
                                  code="null-plane")
        self.w1 = w1
        self.w2 = w2
        self.klass = line_classify(w1, w2)

    @property
    def space(self):
        return self.w1.space

    def point_at(self, theta: float) -> ProjPoint:
        return ProjPoint(self.w1.scale(math.cos(theta)) + self.w2.scale(math.sin(theta)))

    def __repr__(self):
        return f"Geodesic({self.klass.value}, w1={self.w1!r}, w2={self.w2!r})"


def _require_nonorthogonal(g1: ProjPoint, g2: ProjPoint) -> Scalar:
    space = check_same_space(g1.rep, g2.rep)
    h = form(g1.rep, g2.rep)
    scale = space.j_norm * g1.rep.aux_norm() * g2.rep.aux_norm()
    if abs(h) <= space.iso_tol * scale:
        raise OrthogonalPointsError("points are orthogonal")
    return h


def through_points(g1: ProjPoint, g2: ProjPoint) -> Geodesic:
    """The unique geodesic through distinct nonorthogonal points.

    Spanned by g1 and g2 <g2, g1>, which forces the three pairwise
    products to be real whatever the field.
    """
    if same_point(g1, g2):
        raise CoincidentPointsError("no unique geodesic through a repeated point")
    h21 = _require_nonorthogonal(g2, g1)
    w1 = g1.rep.scale(1.0 / g1.rep.aux_norm())
    w2 = g2.rep * h21
    w2 = w2.scale(1.0 / w2.aux_norm())
    return Geodesic(w1, w2)


def from_tangent(p: ProjPoint, t: Tangent) -> Geodesic:
    """The unique geodesic through p with tangent t, from W = pR + (tp)R."""
    require_nonisotropic(p)
    w2 = t.map @ p.rep
    if w2.aux_norm() <= 1e-12 * p.rep.aux_norm() * max(t.map.op_norm(), 1e-300):
        raise PreconditionError("tangent vector vanishes at p", code="zero-tangent")
    w1 = p.rep.scale(1.0 / p.rep.aux_norm())
    return Geodesic(w1, w2.scale(1.0 / w2.aux_norm()))


def b_product(x: Vector, g1: Vector, g2: Vector) -> Scalar:
    """<x,g1><g1,g2><g2,x> - <x,g2><g2,g1><g1,x>, the membership invariant."""
    a = form(x, g1) * form(g1, g2) * form(g2, x)
    b = form(x, g2) * form(g2, g1) * form(g1, x)
    return a - b


def _b_scale(x: Vector, g1: Vector, g2: Vector) -> float:
    return abs(form(x, g1)) * abs(form(g1, g2)) * abs(form(g2, x))


def _aux_b_floor(x: Vector, g1: Vector, g2: Vector) -> float:
    j = x.space.j_norm
    return (j ** 3) * (x.aux_norm() * g1.aux_norm() * g2.aux_norm()) ** 2


def _real_span_member(x: Vector, spanning, tol) -> bool:
    """Whether some representative x k lies in the real span of ``spanning``."""
    space = x.space
    cols = []
    for u in unit_blocks(space.field):
        cols.append((x.data @ u).ravel())
    a = np.stack(cols, axis=1)
    b = np.stack([w.data.ravel() for w in spanning], axis=1)
    a_ri = np.vstack([a.real, a.imag])
    b_ri = np.vstack([b.real, b.imag])
    sol, *_ = np.linalg.lstsq(b_ri, a_ri, rcond=None)
    residual = a_ri - b_ri @ sol
    svals = np.linalg.svd(residual, compute_uv=False)
    return svals[-1] <= tol * max(np.linalg.norm(a_ri, 2), 1e-300)


def contains(geo: Geodesic, x: ProjPoint, tol=None) -> bool:
    """Membership of x in the geodesic circle."""
    space = check_same_space(geo.w1, x.rep)
    if tol is None:
        tol = space.iso_tol
    if geo.klass is LineClass.EUCLIDEAN:
        if not in_k_span(x.rep, [geo.w1, geo.w2], tol):
            raise PreconditionError("point is outside the projective line",
                                    code="off-line")
        return _real_span_member(x.rep, [geo.w1, geo.w2], tol)
    if not in_k_span(x.rep, [geo.w1, geo.w2], tol):
        raise PreconditionError("point is outside the projective line", code="off-line")
    b = b_product(x.rep, geo.w1, geo.w2)
    scale = _b_scale(x.rep, geo.w1, geo.w2)
    if scale <= 1e-12 * _aux_b_floor(x.rep, geo.w1, geo.w2):
        # near the point orthogonal to a spanning vector the products carry
        # no information; fall back to the real-span criterion
        return _real_span_member(x.rep, [geo.w1, geo.w2], tol)
    return abs(b) <= tol * scale


def tangency_product(phi_g: Vector, g: Vector, g1: Vector, g2: Vector) -> Scalar:
    """Paired triple products deciding whether a line tangent is geodesic-tangent."""
    a = form(phi_g, g1) * form(g1, g2) * form(g2, g)
    b = form(g, g1) * form(g1, g2) * form(g2, phi_g)
    c = form(phi_g, g2) * form(g2, g1) * form(g1, g)
    d = form(g, g2) * form(g2, g1) * form(g1, phi_g)
    return a + b - c - d


def tangency_eq(geo: Geodesic, g: ProjPoint, phi_g: Vector, tol=None) -> bool:
    """Whether the tangent vector with value phi_g at g is tangent to the geodesic."""
    space = check_same_space(geo.w1, g.rep, phi_g)
    if tol is None:
        tol = space.iso_tol
    if not contains(geo, g, tol):
        raise PreconditionError("base point is not on the geodesic", code="off-line")
    if not in_k_span(phi_g, [geo.w1, geo.w2], tol):
        raise PreconditionError("vector is not tangent to the projective line",
                                code="off-line")
    if geo.klass is LineClass.EUCLIDEAN:
        return _real_span_member_mod_gk(phi_g, g, geo, tol)
    t = tangency_product(phi_g, g.rep, geo.w1, geo.w2)
    scale = (abs(form(phi_g, geo.w1)) * abs(form(geo.w1, geo.w2)) * abs(form(geo.w2, g.rep))
             + abs(form(g.rep, geo.w1)) * abs(form(geo.w1, geo.w2)) * abs(form(geo.w2, phi_g))
             + abs(form(phi_g, geo.w2)) * abs(form(geo.w2, geo.w1)) * abs(form(geo.w1, g.rep))
             + abs(form(g.rep, geo.w2)) * abs(form(geo.w2, geo.w1)) * abs(form(geo.w1, phi_g)))
    floor = _aux_b_floor(phi_g, geo.w1, geo.w2) * (g.rep.aux_norm() / max(phi_g.aux_norm(), 1e-300))
    if scale <= 1e-12 * floor:
        return _real_span_member_mod_gk(phi_g, g, geo, tol)
    return abs(t) <= tol * scale


def _real_span_member_mod_gk(phi_g: Vector, g: ProjPoint, geo: Geodesic, tol) -> bool:
    """phi_g in W + gK, the euclidean (and degenerate-scale) tangency criterion."""
    space = phi_g.space
    cols = [geo.w1.data.ravel(), geo.w2.data.ravel()]
    for u in unit_blocks(space.field):
        cols.append((g.rep.data @ u).ravel())
    b = np.stack(cols, axis=1)
    b_ri = np.vstack([b.real, b.imag])
    a_ri = np.concatenate([phi_g.data.ravel().real, phi_g.data.ravel().imag])
    sol, *_ = np.linalg.lstsq(b_ri, a_ri, rcond=None)
    residual = np.linalg.norm(a_ri - b_ri @ sol)
    return residual <= tol * max(np.linalg.norm(a_ri), 1e-300)


_TA_CLAMP = 1e-12


def length(g1: ProjPoint, g2: ProjPoint) -> float:
    """Geodesic segment length arccos/arccosh of sqrt(tance)."""
    check_same_space(g1.rep, g2.rep)
    require_nonisotropic(g1)
    require_nonisotropic(g2)
    if same_point(g1, g2):
        return 0.0
    klass = line_classify(g1.rep, g2.rep)
    if klass is LineClass.EUCLIDEAN:
        raise EuclideanLineError("the metric is null over euclidean lines")
    if klass is LineClass.NULL:
        raise EuclideanLineError("the line is null", code="null-line")
    ta = tance(g1, g2)
    if klass is LineClass.SPHERICAL:
        if ta < -_TA_CLAMP or ta > 1.0 + _TA_CLAMP:
            raise TanceRangeError(f"spherical tance {ta} outside [0, 1]")
        return math.acos(math.sqrt(min(max(ta, 0.0), 1.0)))
    if ta < 1.0 - _TA_CLAMP:
        raise TanceRangeError(
            f"hyperbolic tance {ta} below 1; the segment meets the absolute")
    return math.acosh(math.sqrt(max(ta, 1.0)))


def segment_tangent(p: ProjPoint, q: ProjPoint) -> Tangent:
    """Tangent at p of the oriented segment from p to q avoiding p-orthogonals."""
    require_nonisotropic(p)
    if same_point(p, q):
        raise CoincidentPointsError("segment endpoints coincide")
    hpq = _require_nonorthogonal(p, q)
    phi = rank_one(q.rep * inv(hpq), p.rep)
    return observe(p, phi)


# -- cones over geodesics and bisector normals -----------------------------


def _quaternionic_partner(col: np.ndarray, n: int) -> np.ndarray:
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    big = np.kron(np.eye(n), omega)
    return -big @ col.conj()


def orthogonal_complement_point(vectors) -> ProjPoint:
    """The polar point of the K-span of dim-1-codimension many vectors."""
    space = vectors[0].space
    rows = np.vstack([v.data.conj().T @ space.j for v in vectors])
    _, svals, vh = np.linalg.svd(rows)
    null = vh.conj().T[:, -space.m:]
    if space.m == 2:
        col = null[:, -1]
        data = np.stack([col, _quaternionic_partner(col, space.dim)], axis=1)
    else:
        data = null
    return ProjPoint(Vector(space, data))


def cone_membership(x: ProjPoint, g1: ProjPoint, g2: ProjPoint, tol=None) -> bool:
    """Membership in the projective cone over the geodesic through g1, g2."""
    space = check_same_space(x.rep, g1.rep, g2.rep)
    if space.dim != 3:
        raise ValidationError("cones over geodesics live in dimension 3",
                              code="wrong-dimension")
    if tol is None:
        tol = space.iso_tol
    geo = through_points(g1, g2)
    if geo.klass is LineClass.EUCLIDEAN:
        raise EuclideanLineError("the spine geodesic must be noneuclidean")
    b = b_product(x.rep, geo.w1, geo.w2)
    scale = _b_scale(x.rep, geo.w1, geo.w2)
    if scale <= 1e-12 * _aux_b_floor(x.rep, geo.w1, geo.w2):
        vertex = orthogonal_complement_point([geo.w1, geo.w2])
        if same_point(x, vertex):
            return True
        return contains(geo, ProjPoint(proj_perp(vertex, x.rep)), tol)
    return abs(b) <= tol * scale


def bisector_normal(q: ProjPoint, g1: ProjPoint, g2: ProjPoint) -> Tangent:
    """Normal tangent at q to the bisector with real spine through g1, g2."""
    space = check_same_space(q.rep, g1.rep, g2.rep)
    if space.field != "C" or space.dim != 3:
        raise ValidationError("bisector normals need C^3", code="wrong-space")
    require_nonisotropic(q)
    if not cone_membership(q, g1, g2):
        raise PreconditionError("point is not on the bisector", code="off-cone")
    h12 = form(g1.rep, g2.rep)
    h21 = form(g2.rep, g1.rep)
    i = Scalar("C", 0.0, 1.0)
    w = (g1.rep * (form(g2.rep, q.rep) * inv(h21))
         - g2.rep * (form(g1.rep, q.rep) * inv(h12))) * i
    return observe(q, rank_one(w, q.rep))


# -- the S^3 action carried by a maximal real structure --------------------


def _require_real_form(space):
    for i in range(space.dim):
        for k in range(space.dim):
            m = space.m
            entry = space.j[i * m:(i + 1) * m, k * m:(k + 1) * m]
            off = abs(entry[0, 1]) + abs(entry[0, 0].imag) if m == 2 else abs(entry[0, 0].imag)
            if off > 1e-12 * max(space.j_norm, 1e-300):
                raise PreconditionError(
                    "the form is not real on the standard real structure",
                    code="form-not-real")


def sphere_action(k: Scalar, p: ProjPoint, t: Tangent):
    """Left action of a unit quaternion on a point and a tangent vector.

    Requires the form to be real on the standard real structure, which
    makes entrywise left multiplication compatible with the form.
    """
    space = p.space
    if space.field != H:
        raise ValidationError("the sphere action needs field H", code="field-mismatch")
    if k.field != H:
        raise ValidationError("the acting scalar must be quaternionic",
                              code="field-mismatch")
    if abs(abs(k) - 1.0) > 1e-9:
        raise PreconditionError("the acting scalar must be unit", code="nonunit-scalar")
    _require_real_form(space)
    big = np.kron(np.eye(space.dim), to_block(k))
    moved = ProjPoint(Vector(space, big @ p.rep.data))
    new_map = LinearMap(space, big @ t.map.data @ big.conj().T)
    return moved, observe(moved, new_map)


def circle_classify(w1: Vector, w2: Vector, tol=None) -> CircleClass:
    """Classify the circle of a real 2-plane by the real part of the form."""
    space = check_same_space(w1, w2)
    if tol is None:
        tol = space.iso_tol
    scale = space.j_norm * w1.aux_norm() * w2.aux_norm()
    a = form_re(w1, w1)
    b = form_re(w1, w2)
    c = form_re(w2, w2)
    if max(abs(a), abs(b), abs(c)) <= tol * scale:
        return CircleClass.ABSOLUTE
    det = a * c - b * b
    if abs(det) <= tol * scale * scale:
        return CircleClass.HOROCYCLE
    return CircleClass.METRIC_CIRCLE if det > 0 else CircleClass.HYPERCYCLE


def same_geodesic(geo1: Geodesic, geo2: Geodesic) -> bool:
    """Projective equality of geodesics via mutual membership of spanning points."""
    try:
        return (contains(geo1, ProjPoint(geo2.w1)) and contains(geo1, ProjPoint(geo2.w2))
                and contains(geo2, ProjPoint(geo1.w1)) and contains(geo2, ProjPoint(geo1.w2)))
    except PreconditionError:
        return False
