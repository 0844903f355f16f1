"""Complex hyperbolic plane invariants: triangle area, Goldman invariant,
angles between cotranchal bisectors, and meridional transport of slices.

Everything in this module lives in C^3 with a ++- form and metric sign
-1, the complex hyperbolic plane model.  Inputs arrive with arbitrary
representatives; every returned quantity is representative-invariant.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (OrthogonalPointsError, PreconditionError, ValidationError)
from .geodesics import bisector_normal, orthogonal_complement_point
from .projective import (PointClass, ProjPoint, classify, in_k_span,
                         proj_perp, require_nonisotropic, same_point, tance)
from .scalars import C, Scalar, principal_arg
from .spaces import check_same_space, form
from .tangent import Tangent, hmetric
from .transport import sqrt_tance_branch


def require_chg_space(space):
    """The module's habitat: C^3, signature ++-, metric sign -1."""
    if space.field != C or space.dim != 3:
        raise ValidationError("complex hyperbolic operations need C^3",
                              code="wrong-space")
    eigs = np.linalg.eigvalsh(space.j)
    if not (eigs[0] < 0 < eigs[1]):
        raise ValidationError("the form must have signature ++-", code="wrong-space")
    if space.metric_sign != -1:
        raise ValidationError("the metric sign must be -1", code="wrong-space")
    return space


def _products_nonzero(points):
    space = points[0].space
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            h = form(points[i].rep, points[j].rep)
            scale = (space.j_norm * points[i].rep.aux_norm()
                     * points[j].rep.aux_norm())
            if abs(h) <= space.iso_tol * max(scale, 1e-300):
                raise OrthogonalPointsError(
                    "two of the points are orthogonal; the invariant degenerates")


def _coplanar_in_line(points, tol):
    stacked = np.hstack([p.rep.data for p in points])
    svals = np.linalg.svd(stacked, compute_uv=False)
    if svals[1] <= tol * svals[0]:
        raise PreconditionError("the points do not span a projective line",
                                code="degenerate-triangle")
    if svals[2] > tol * svals[0]:
        raise PreconditionError("the points are not coplanar in one line",
                                code="not-coplanar")


def triangle_area(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> float:
    """Oriented area of the plane triangle in a complex geodesic.

    Minus half the principal argument of minus the cyclic triple
    product; the argument lives in (-pi, pi] so the area lands in
    [-pi/2, pi/2) with the degenerate ideal boundary mapped to -pi/2.
    """
    space = check_same_space(p1.rep, p2.rep, p3.rep)
    require_chg_space(space)
    for p in (p1, p2, p3):
        if classify(p) is PointClass.POSITIVE:
            raise PreconditionError("triangle vertices must be negative or null",
                                    code="positive-vertex")
    _products_nonzero([p1, p2, p3])
    _coplanar_in_line([p1, p2, p3], space.iso_tol)
    triple = (form(p1.rep, p2.rep) * form(p2.rep, p3.rep)
              * form(p3.rep, p1.rep)).complex_value()
    return -0.5 * principal_arg(-triple)


class BisectorSegment:
    """Oriented bisector segment: a slice polar point and an isotropic vertex.

    The real spine runs from q = perp-part of the vertex at the polar
    point (the spine's intersection with the slice) out to the vertex.
    """

    __slots__ = ("polar", "vertex", "spine_foot")

    def __init__(self, polar: ProjPoint, vertex: ProjPoint):
        space = check_same_space(polar.rep, vertex.rep)
        require_chg_space(space)
        if classify(polar) is not PointClass.POSITIVE:
            raise PreconditionError("the slice polar point must be positive",
                                    code="bad-polar")
        if classify(vertex) is not PointClass.NULL:
            raise PreconditionError("the vertex must be isotropic", code="bad-vertex")
        h = form(polar.rep, vertex.rep)
        scale = space.j_norm * polar.rep.aux_norm() * vertex.rep.aux_norm()
        if abs(h) <= space.iso_tol * scale:
            raise OrthogonalPointsError("the vertex lies on the slice")
        self.polar = polar
        self.vertex = vertex
        self.spine_foot = ProjPoint(proj_perp(polar, vertex.rep))

    @property
    def space(self):
        return self.polar.space


def _shared_polar(b1: BisectorSegment, b2: BisectorSegment) -> ProjPoint:
    if not same_point(b1.polar, b2.polar):
        raise PreconditionError("the bisectors do not share a slice",
                                code="no-common-slice")
    return b1.polar


def goldman_u(b1: BisectorSegment, b2: BisectorSegment) -> Scalar:
    """Goldman-type invariant u of two bisectors sharing a slice.

    |u|^2 is the tance between the spine feet and arg u the constant
    part of the angle between the bisector segments.
    """
    p = _shared_polar(b1, b2)
    v1, v2 = b1.vertex, b2.vertex
    numerator = form(v2.rep, v1.rep) * form(p.rep, p.rep)
    denominator = form(v2.rep, p.rep) * form(p.rep, v1.rep)
    one = Scalar(C, 1.0)
    return one - numerator / denominator


def bisector_angle(b1: BisectorSegment, b2: BisectorSegment, q: ProjPoint) -> float:
    """Oriented angle between the bisector segments at a slice point q."""
    p = _shared_polar(b1, b2)
    space = check_same_space(p.rep, q.rep)
    hpq = form(p.rep, q.rep)
    scale = space.j_norm * p.rep.aux_norm() * q.rep.aux_norm()
    if abs(hpq) > space.iso_tol * scale:
        raise PreconditionError("the reference point is off the common slice",
                                code="off-slice")
    if classify(q) is not PointClass.NEGATIVE:
        raise PreconditionError("the reference point must be negative",
                                code="bad-reference")
    if same_point(b1.vertex, b2.vertex):
        return 0.0
    n1 = bisector_normal(q, b1.spine_foot, b1.vertex)
    n2 = bisector_normal(q, b2.spine_foot, b2.vertex)
    return principal_arg(hmetric(n1, n2).complex_value())


def meridional_transport(p1: ProjPoint, p2: ProjPoint, q1: ProjPoint) -> ProjPoint:
    """Slice-to-slice identification of a bisector along its real spine.

    p1, p2 are spine points; q1 lies on the slice through p1.  The image
    is the unique point of the slice through p2 whose segment tangent is
    the square-root-transported tangent of the segment from p1 to q1.
    """
    space = check_same_space(p1.rep, p2.rep, q1.rep)
    require_chg_space(space)
    require_nonisotropic(p1, "spine point")
    require_nonisotropic(p2, "spine point")
    if same_point(p1, p2):
        raise PreconditionError("spine points coincide", code="coincident-points")
    h12 = form(p1.rep, p2.rep)
    scale = space.j_norm * p1.rep.aux_norm() * p2.rep.aux_norm()
    if abs(h12) <= space.iso_tol * scale:
        raise OrthogonalPointsError("spine points are orthogonal")

    focus = orthogonal_complement_point([p1.rep, p2.rep])
    if same_point(q1, focus):
        raise PreconditionError("the focus is fixed, not transported",
                                code="focus-point")
    if not in_k_span(q1.rep, [p1.rep, focus.rep]):
        raise PreconditionError("the point is off the slice through p1",
                                code="off-slice")

    root = sqrt_tance_branch(tance(p1, p2))
    first = (p2.rep * form(p1.rep, q1.rep)) * Scalar(C, root.real, root.imag)
    second = proj_perp(p1, q1.rep) * h12
    return ProjPoint(first + second)
