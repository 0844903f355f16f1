"""Tangent vectors as footed linear maps; the riemannian and hermitian metrics.

A tangent vector at a nonisotropic point p is any K-linear map V -> V
sandwiched between the two projectors of p: it kills p-perp and lands
in p-perp.  Storing the full n x n map (rather than a basis of p-perp)
keeps every construction basis-free; an arbitrary map is turned into a
tangent by observing it from p.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError, SpaceMismatchError, ValidationError
from .projective import (ProjPoint, proj_para_map, proj_perp, proj_perp_map,
                         require_nonisotropic, same_point)
from .scalars import C, Scalar
from .spaces import (LinearMap, Vector, adjoint, check_same_space,
                     complex_trace, form, form_re, rank_one, real_trace)


class Tangent:
    """A footpoint plus an observed linear map."""

    __slots__ = ("foot", "map")

    def __init__(self, foot: ProjPoint, map: LinearMap):
        check_same_space(foot.rep, map)
        self.foot = foot
        self.map = map

    @property
    def space(self):
        return self.map.space

    def apply(self, v: Vector) -> Vector:
        return self.map @ v

    def at_foot(self) -> Vector:
        """Image of the footpoint representative, the vector part of (2.3)."""
        return self.map @ self.foot.rep

    def __add__(self, other):
        _check_same_foot(self, other)
        return Tangent(self.foot, self.map + other.map)

    def __sub__(self, other):
        _check_same_foot(self, other)
        return Tangent(self.foot, self.map - other.map)

    def __neg__(self):
        return Tangent(self.foot, -self.map)

    def scale(self, r: float) -> "Tangent":
        return Tangent(self.foot, self.map.scale(r))

    def times_complex(self, c: complex) -> "Tangent":
        return Tangent(self.foot, self.map.times_complex(c))

    def norm(self) -> float:
        return self.map.frob_norm()

    def is_zero(self, tol=1e-12) -> bool:
        scale = max(self.foot.rep.aux_norm(), 1.0)
        return self.map.frob_norm() <= tol * scale

    def __repr__(self):
        return f"Tangent(foot={self.foot!r}, map={self.map!r})"


def _check_same_foot(t1: Tangent, t2: Tangent):
    check_same_space(t1.map, t2.map)
    if not same_point(t1.foot, t2.foot):
        raise SpaceMismatchError("tangent vectors have different footpoints")


def observe(p: ProjPoint, t: LinearMap) -> Tangent:
    """Sandwich t between the projectors of p; idempotent on tangents at p."""
    check_same_space(p.rep, t)
    require_nonisotropic(p)
    pi = proj_perp_map(p)
    pi_prime = proj_para_map(p)
    return Tangent(p, pi @ t @ pi_prime)


def metric(t1: Tangent, t2: Tangent) -> float:
    """Riemannian metric: sign * tr_R(t1* t2) / dim_R K."""
    _check_same_foot(t1, t2)
    space = t1.space
    value = real_trace(adjoint(t1.map) @ t2.map) / space.real_dim
    return space.metric_sign * value


def hmetric(t1: Tangent, t2: Tangent) -> Scalar:
    """Hermitian metric over C; its real part is the riemannian metric."""
    _check_same_foot(t1, t2)
    space = t1.space
    if space.field != C:
        raise ValidationError("hermitian metric needs field C", code="field-mismatch")
    tr = complex_trace(adjoint(t1.map) @ t2.map)
    return Scalar(C, space.metric_sign * tr.a, space.metric_sign * tr.b)


def curve_tangent(c0: Vector, c0dot: Vector) -> Tangent:
    """Tangent of a curve from a lift: sends c0 to the perp part of c0dot."""
    p = ProjPoint(c0)
    hpp = require_nonisotropic(p, "curve point")
    v = proj_perp(p, c0dot)
    return Tangent(p, rank_one(v, c0).scale(1.0 / hpp))


def spread(t: Tangent, x: ProjPoint) -> Tangent:
    """Value at x of the field spread from t: the map observed from x."""
    return observe(x, t.map)


def tangent_gap(t1: Tangent, t2: Tangent) -> float:
    """Relative Frobenius distance between the underlying maps."""
    denom = max(t1.map.frob_norm(), t2.map.frob_norm(), 1e-300)
    return (t1.map - t2.map).frob_norm() / denom
