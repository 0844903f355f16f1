"""Points of the projective space, signature classes, projections, tance.

A ProjPoint carries a representative vector and every exported quantity
is invariant under rescaling it by K*.  Isotropy is decided relative to
the auxiliary Euclidean norm of the representative, with the tolerance
owned by the space.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import (CoincidentPointsError, IsotropicPointError,
                     OrthogonalPointsError, PreconditionError, ValidationError,
                     ZeroVectorError)
from .spaces import LinearMap, Vector, check_same_space, form, form_re, rank_one


class PointClass(Enum):
    NEGATIVE = "Negative"
    NULL = "Null"
    POSITIVE = "Positive"


class LineClass(Enum):
    SPHERICAL = "Spherical"
    HYPERBOLIC = "Hyperbolic"
    EUCLIDEAN = "Euclidean"
    NULL = "Null"


class ProjPoint:
    """A point of P_K V, stored as a nonzero representative vector."""

    __slots__ = ("rep",)

    def __init__(self, rep: Vector):
        if rep.is_zero():
            raise ZeroVectorError("projective point needs a nonzero representative")
        self.rep = rep

    @property
    def space(self):
        return self.rep.space

    def rescaled(self, k) -> "ProjPoint":
        return ProjPoint(self.rep * k)

    def normalized(self) -> "ProjPoint":
        """Representative rescaled to auxiliary norm one (real positive factor)."""
        return ProjPoint(self.rep.scale(1.0 / self.rep.aux_norm()))

    def __repr__(self):
        return f"ProjPoint({self.rep.entries()})"


def _self_product(p: ProjPoint) -> float:
    return form_re(p.rep, p.rep)


def is_isotropic(p: ProjPoint) -> bool:
    space = p.space
    aux = p.rep.aux_norm()
    return abs(_self_product(p)) <= space.iso_tol * space.j_norm * aux * aux


def require_nonisotropic(p: ProjPoint, what="point") -> float:
    """Return <p,p> after rejecting isotropic representatives."""
    if is_isotropic(p):
        raise IsotropicPointError(f"{what} is isotropic")
    return _self_product(p)


def classify(p: ProjPoint) -> PointClass:
    if is_isotropic(p):
        return PointClass.NULL
    return PointClass.NEGATIVE if _self_product(p) < 0 else PointClass.POSITIVE


def proj_para(p: ProjPoint, v: Vector) -> Vector:
    """Component of v along p:  p <p,v> / <p,p>."""
    hpp = require_nonisotropic(p)
    return (p.rep * form(p.rep, v)).scale(1.0 / hpp)


def proj_perp(p: ProjPoint, v: Vector) -> Vector:
    """Component of v orthogonal to p."""
    return v - proj_para(p, v)


def proj_para_map(p: ProjPoint) -> LinearMap:
    hpp = require_nonisotropic(p)
    return rank_one(p.rep, p.rep).scale(1.0 / hpp)


def proj_perp_map(p: ProjPoint) -> LinearMap:
    return p.space.identity_map() - proj_para_map(p)


def tance(p: ProjPoint, q: ProjPoint) -> float:
    """<p,q><q,p> / (<p,p><q,q>), real and representative-invariant."""
    check_same_space(p.rep, q.rep)
    hpp = require_nonisotropic(p)
    hqq = require_nonisotropic(q)
    hpq = form(p.rep, q.rep)
    return (abs(hpq) ** 2) / (hpp * hqq)


def gram_det(p: Vector, q: Vector) -> float:
    """D(p,q) = <p,p><q,q> - <p,q><q,p>; its sign classifies span{p,q}."""
    check_same_space(p, q)
    return form_re(p, p) * form_re(q, q) - abs(form(p, q)) ** 2


def _pair_scale(p: Vector, q: Vector) -> float:
    j_norm = p.space.j_norm
    return j_norm * j_norm * (p.aux_norm() * q.aux_norm()) ** 2


def same_point(p: ProjPoint, q: ProjPoint, tol=None) -> bool:
    """Projective equality: the representatives are K-proportional.

    Decided through the auxiliary inner product so it also works at
    isotropic points (geodesics may be spanned by absolute points).
    """
    space = check_same_space(p.rep, q.rep)
    if tol is None:
        tol = space.iso_tol
    a, b = p.rep.data, q.rep.data
    gram = b.conj().T @ b
    coeff = np.linalg.solve(gram, b.conj().T @ a)
    residual = np.linalg.norm(a - b @ coeff)
    return residual <= tol * np.linalg.norm(a)


def orthopoint_in_line(p: ProjPoint, q: ProjPoint) -> ProjPoint:
    """The unique point of the line through p and q orthogonal to p."""
    check_same_space(p.rep, q.rep)
    if same_point(p, q):
        raise CoincidentPointsError("q coincides with p; the line is not determined")
    r = proj_perp(p, q.rep)
    if r.aux_norm() <= p.space.iso_tol * q.rep.aux_norm():
        raise CoincidentPointsError("q lies in pK")
    return ProjPoint(r)


def line_classify(p: Vector, q: Vector, tol=None) -> LineClass:
    """Class of the projective line spanned by K-independent p and q."""
    space = check_same_space(p, q)
    if tol is None:
        tol = space.iso_tol
    if _k_dependent(p, q, tol):
        raise PreconditionError("vectors are K-linearly dependent", code="dependent-vectors")
    scale = space.j_norm * p.aux_norm() * q.aux_norm()
    hpp = form_re(p, p)
    hqq = form_re(q, q)
    hpq = abs(form(p, q))
    if max(abs(hpp), abs(hqq), hpq) <= tol * scale:
        return LineClass.NULL
    d = hpp * hqq - hpq * hpq
    if abs(d) <= tol * _pair_scale(p, q):
        return LineClass.EUCLIDEAN
    return LineClass.SPHERICAL if d > 0 else LineClass.HYPERBOLIC


def _k_dependent(p: Vector, q: Vector, tol) -> bool:
    stacked = np.hstack([p.data, q.data])
    svals = np.linalg.svd(stacked, compute_uv=False)
    return svals[-1] <= tol * svals[0]


def in_k_span(x: Vector, spanning, tol=None) -> bool:
    """Whether x lies in the K-span of the given vectors (complex column test)."""
    space = x.space
    if tol is None:
        tol = space.iso_tol
    basis = np.hstack([v.data for v in spanning])
    sol, *_ = np.linalg.lstsq(basis, x.data, rcond=None)
    residual = np.linalg.norm(basis @ sol - x.data)
    return residual <= tol * max(np.linalg.norm(x.data), 1e-300)
