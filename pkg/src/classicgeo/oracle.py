"""Independent numerical verification: charts, finite differences, ODE
transport, area and arc-length integration, and random form-preserving maps.

Nothing here reuses the closed forms it is meant to check.  The
covariant derivative is realized directly from its definition by
Richardson-extrapolated central differences along affine curves in V;
parallel transport is integrated as a projector-constraint ODE; areas
and lengths are integrated in explicit models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (OrthogonalPointsError, PreconditionError, ValidationError)
from .projective import (LineClass, PointClass, ProjPoint, classify,
                         is_isotropic, line_classify, proj_perp,
                         require_nonisotropic, same_point)
from .scalars import BLOCK_DIM, Scalar, from_block, to_block, unit_blocks
from .spaces import (ClassicSpace, LinearMap, Vector, adjoint,
                     check_same_space, form, form_re)
from .tangent import Tangent, curve_tangent, metric, observe

# -- deterministic sampling -------------------------------------------------


def default_rng(seed=0):
    return np.random.default_rng(seed)


def random_scalar(field_tag, rng, scale=1.0) -> Scalar:
    comps = rng.standard_normal(4) * scale
    keep = {"R": 1, "C": 2, "H": 4}[field_tag]
    comps[keep:] = 0.0
    return Scalar(field_tag, *[float(x) for x in comps])


def random_vector(space: ClassicSpace, rng, scale=1.0) -> Vector:
    return space.vector([random_scalar(space.field, rng, scale)
                         for _ in range(space.dim)])


def random_point(space: ClassicSpace, rng, klass=None, min_defect=0.05,
                 max_tries=1000) -> ProjPoint:
    """Random projective point, optionally of a prescribed signature class,
    kept safely away from the absolute."""
    for _ in range(max_tries):
        v = random_vector(space, rng)
        if v.is_zero(1e-6):
            continue
        p = ProjPoint(v.scale(1.0 / v.aux_norm()))
        defect = abs(form_re(p.rep, p.rep)) / space.j_norm
        if defect < min_defect:
            continue
        got = classify(p)
        if klass is None or got is klass:
            return p
    raise PreconditionError("could not sample a point of the requested class",
                            code="sampling-failure")


def signature_basis(space: ClassicSpace):
    """Form-orthogonal K-basis with <u_i, u_i> = +-1, cached on the space."""
    cached = getattr(space, "_signature_basis", None)
    if cached is not None:
        return cached
    rng = np.random.default_rng(1234321)
    basis = []
    signs = []
    for attempt in range(200):
        candidates = [space.basis_vector(i) for i in range(space.dim)]
        if attempt:
            candidates = [v + random_vector(space, rng, 0.5) for v in candidates]
        basis, signs = [], []
        ok = True
        for cand in candidates:
            w = cand
            for u, sgn in zip(basis, signs):
                coeff = form(u, w) * float(sgn)
                w = w - u * coeff
            huu = form_re(w, w)
            if abs(huu) <= 1e-8 * space.j_norm * max(w.aux_norm(), 1e-150) ** 2:
                ok = False
                break
            basis.append(w.scale(1.0 / math.sqrt(abs(huu))))
            signs.append(1 if huu > 0 else -1)
        if ok and len(basis) == space.dim:
            break
    else:
        raise PreconditionError("could not orthogonalize the form",
                                code="gram-schmidt-breakdown")
    space._signature_basis = (basis, signs)
    return basis, signs


def random_isotropic_point(space: ClassicSpace, rng, max_tries=200) -> ProjPoint:
    """Random point of the absolute (needs an indefinite form)."""
    basis, signs = signature_basis(space)
    pos = [u for u, s in zip(basis, signs) if s > 0]
    neg = [u for u, s in zip(basis, signs) if s < 0]
    if not pos or not neg:
        raise PreconditionError("definite form has no isotropic points",
                                code="definite-form")
    for _ in range(max_tries):
        vp = _combine(pos, space, rng)
        vn = _combine(neg, space, rng)
        a = form_re(vp, vp)
        b = -form_re(vn, vn)
        if a <= 1e-12 or b <= 1e-12:
            continue
        v = vp + vn.scale(math.sqrt(a / b))
        if v.is_zero(1e-9):
            continue
        return ProjPoint(v.scale(1.0 / v.aux_norm()))
    raise PreconditionError("could not sample an isotropic point",
                            code="sampling-failure")


def _combine(vectors, space, rng):
    out = vectors[0] * random_scalar(space.field, rng)
    for v in vectors[1:]:
        out = out + v * random_scalar(space.field, rng)
    return out


def random_tangent(p: ProjPoint, rng, unit=True, max_tries=100) -> Tangent:
    """Random tangent vector at p (observed random map), Frobenius-normalized."""
    space = p.space
    nm = space.dim * space.m
    for _ in range(max_tries):
        raw = rng.standard_normal((nm, nm)) + 1j * rng.standard_normal((nm, nm))
        if space.field == "R":
            raw = raw.real.astype(complex)
        if space.field == "H":
            raw = _quaternionify(raw, space.dim)
        t = observe(p, LinearMap(space, raw))
        size = t.map.frob_norm()
        if size > 1e-6:
            return t.scale(1.0 / size) if unit else t
    raise PreconditionError("could not sample a tangent", code="sampling-failure")


def _quaternionify(matrix, n):
    """Project a 2n x 2n complex matrix onto the quaternionic block subalgebra."""
    omega = np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    return 0.5 * (matrix + omega @ matrix.conj() @ omega.T)


def random_isometry(space: ClassicSpace, rng_or_seed=0) -> LinearMap:
    """Random form-preserving map: adjoint(U) U = identity to 1e-10."""
    rng = (rng_or_seed if isinstance(rng_or_seed, np.random.Generator)
           else np.random.default_rng(rng_or_seed))
    basis, signs = signature_basis(space)
    b = np.hstack([u.data for u in basis])
    b_inv = np.linalg.inv(b)
    aux = ClassicSpace.from_signature(space.field, signs, space.metric_sign)
    identity = np.eye(space.dim * space.m)
    for _ in range(100):
        cols = _unitary_columns(aux, signs, rng)
        if cols is None:
            continue
        u_d = np.hstack([c.data for c in cols])
        u = b @ u_d @ b_inv
        candidate = LinearMap(space, u)
        defect = np.linalg.norm((adjoint(candidate) @ candidate).data - identity, 2)
        if defect <= 1e-10:
            return candidate
    raise PreconditionError("isometry sampling failed", code="gram-schmidt-breakdown")


def _unitary_columns(aux_space, signs, rng):
    cols = []
    for i, target in enumerate(signs):
        for _ in range(60):
            a = random_vector(aux_space, rng)
            w = a
            for u, sgn in zip(cols, signs):
                w = w - u * (form(u, w) * float(sgn))
            huu = form_re(w, w)
            if abs(huu) < 0.01 * max(w.aux_norm(), 1e-150) ** 2:
                continue
            if (huu > 0) != (target > 0):
                continue
            cols.append(w.scale(1.0 / math.sqrt(abs(huu))))
            break
        else:
            return None
    return cols


# -- affine charts ----------------------------------------------------------


@dataclass
class AffineChart:
    """Affine chart x |-> p + sum basis_i * unit_a * x_(i,a) around a
    nonisotropic point, with real coordinates over a K-basis of p-perp."""

    point: ProjPoint
    basis: list = field(default_factory=list)

    @classmethod
    def at_point(cls, p: ProjPoint) -> "AffineChart":
        require_nonisotropic(p)
        space = p.space
        rng = np.random.default_rng(424242)
        aux_basis = _aux_perp_basis(p)
        basis = _form_orthogonalize(aux_basis, space, rng)
        return cls(ProjPoint(p.rep.scale(1.0 / p.rep.aux_norm())), basis)

    @property
    def space(self):
        return self.point.space

    def coordinate_columns(self):
        cols = []
        for v in self.basis:
            for u in unit_blocks(self.space.field):
                cols.append(v.data @ u)
        return cols

    def real_dim(self):
        return len(self.basis) * self.space.real_dim

    def lift(self, coords) -> Vector:
        coords = np.asarray(coords, dtype=float)
        data = self.point.rep.data.copy()
        for x, col in zip(coords, self.coordinate_columns()):
            data = data + x * col
        return Vector(self.space, data)

    def chart_point(self, coords) -> ProjPoint:
        return ProjPoint(self.lift(coords))

    def coords(self, x) -> np.ndarray:
        """Inverse chart: affine-normalize the representative, then solve."""
        rep = x.rep if isinstance(x, ProjPoint) else x
        p = self.point.rep
        hpx = form(p, rep)
        hpp = form_re(p, p)
        from .scalars import inv as sinv
        normalized = rep * (sinv(hpx) * hpp)
        delta = (normalized - p).data.ravel()
        cols = np.stack([c.ravel() for c in self.coordinate_columns()], axis=1)
        a = np.vstack([cols.real, cols.imag])
        b = np.concatenate([delta.real, delta.imag])
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
        return sol

    def tangent_basis(self):
        out = []
        for v in self.basis:
            for u in unit_blocks(self.space.field):
                direction = Vector(self.space, v.data @ u)
                out.append(curve_tangent(self.point.rep, direction))
        return out

    def metric_at_zero(self) -> np.ndarray:
        tangents = self.tangent_basis()
        k = len(tangents)
        g = np.empty((k, k))
        for i in range(k):
            for j in range(i, k):
                g[i, j] = g[j, i] = metric(tangents[i], tangents[j])
        return g


def _aux_perp_basis(p: ProjPoint):
    """Auxiliary-orthonormal K-basis of p-perp from projected standard vectors."""
    space = p.space
    basis = []
    for i in range(space.dim):
        v = proj_perp(p, space.basis_vector(i))
        data = v.data.copy()
        for u in basis:
            data = data - u.data @ (u.data.conj().T @ data)
        norm = np.linalg.norm(data) / math.sqrt(space.m)
        if norm > 1e-8:
            basis.append(Vector(space, data / norm))
        if len(basis) == space.dim - 1:
            break
    if len(basis) != space.dim - 1:
        raise PreconditionError("chart basis construction failed",
                                code="gram-schmidt-breakdown")
    return basis


def _form_orthogonalize(vectors, space, rng):
    """Form-orthogonalize inside p-perp, resampling isotropic pivots."""
    out = []
    pool = list(vectors)
    attempts = 0
    while pool:
        v = pool.pop(0)
        w = v
        for u in out:
            huu = form_re(u, u)
            w = w - u * (form(u, w) * (1.0 / huu))
        hww = form_re(w, w)
        if abs(hww) > 1e-8 * space.j_norm * max(w.aux_norm(), 1e-150) ** 2:
            out.append(w.scale(1.0 / w.aux_norm()))
            continue
        attempts += 1
        if attempts > 80:
            raise PreconditionError("degenerate chart directions persist",
                                    code="gram-schmidt-breakdown")
        mixer = vectors[int(rng.integers(len(vectors)))]
        pool.append(v + mixer * random_scalar(space.field, rng))
    return out


# -- finite-difference covariant derivative --------------------------------


def fd_covariant_derivative(field_fn, direction: Tangent, at: ProjPoint,
                            step=1e-5) -> Tangent:
    """Central-difference realization of the connection, Richardson once.

    ``field_fn`` maps ProjPoint -> Tangent and must be a lifted field
    near ``at``; the derivative is taken along the affine curve through
    the direction's value and observed at ``at``.
    """
    if not (1e-8 <= step <= 1e-4):
        raise ValidationError("step must lie in [1e-8, 1e-4]", code="bad-step")
    space = check_same_space(direction.map, at.rep)
    tp = direction.map @ at.rep
    size = tp.aux_norm()
    if size <= 1e-14 * at.rep.aux_norm():
        return observe(at, space.zero_map())
    h = step * at.rep.aux_norm() / size

    def diff(eps):
        plus = field_fn(ProjPoint(at.rep + tp.scale(eps))).map.data
        minus = field_fn(ProjPoint(at.rep - tp.scale(eps))).map.data
        return (plus - minus) / (2.0 * eps)

    extrapolated = (4.0 * diff(h / 2.0) - diff(h)) / 3.0
    return observe(at, LinearMap(space, extrapolated))


def spread_field(t: Tangent):
    """The lifted field spread from t, as a callable."""
    return lambda x: observe(x, t.map)


def fd_curvature(t1: Tangent, t2: Tangent, s: Tangent, step=1e-4) -> Tangent:
    """Finite-difference curvature of the connection on spread fields.

    Nested derivative along the two spread directions; the bracket term
    vanishes at the common footpoint for spread fields (checked
    separately by the flow tests).
    """
    p = t1.foot
    s_field = spread_field(s)

    def nabla_along(t_dir):
        def field_fn(x):
            direction = observe(x, t_dir.map)
            return fd_covariant_derivative(s_field, direction, x, step)
        return field_fn

    first = fd_covariant_derivative(nabla_along(t1), t2, p, step)
    second = fd_covariant_derivative(nabla_along(t2), t1, p, step)
    return first - second


# -- parallel transport as a projector-constraint ODE ----------------------


def _segment_reps(p: ProjPoint, q: ProjPoint):
    """Representatives with <p0,p0> = +-1-ish and <p0, q0> a positive multiple
    of it, so the affine segment lifts the geodesic segment between them."""
    from .scalars import inv as sinv

    p0 = p.rep.scale(1.0 / p.rep.aux_norm())
    sigma = 1.0 if form_re(p0, p0) > 0 else -1.0
    hpq = form(p0, q.rep)
    scale = p.space.j_norm * q.rep.aux_norm()
    if abs(hpq) <= p.space.iso_tol * max(scale, 1e-300):
        raise OrthogonalPointsError("transport endpoints are orthogonal")
    q1 = q.rep * sinv(hpq)
    q0 = q1.scale(sigma / q1.aux_norm())
    return p0, q0


def ode_transport(p: ProjPoint, q: ProjPoint, t: Tangent, steps=256) -> Tangent:
    """Parallel transport integrated with classical RK4.

    The unknown is the footless map M(s) along the affine lift c(s); the
    footing constraint M = (1-P) M P with P the parallel projector of
    c(s) forces M' = P' M P + (1-P) M P' up to the covariant part, which
    parallelism sets to zero.
    """
    if steps < 64:
        raise ValidationError("ode transport needs at least 64 steps",
                              code="bad-steps")
    space = check_same_space(p.rep, q.rep, t.map)
    require_nonisotropic(p)
    require_nonisotropic(q)
    if same_point(p, q):
        return t
    p0, q0 = _segment_reps(p, q)
    j = space.j
    cdot = q0.data - p0.data

    fine = np.linspace(0.0, 1.0, 4 * steps + 1)
    cs = (p0.data[None, :, :] * (1.0 - fine)[:, None, None]
          + q0.data[None, :, :] * fine[:, None, None])
    hccs = np.einsum("sim,ij,sjn->smn", cs.conj(), j, cs)
    hccs = np.trace(hccs, axis1=1, axis2=2).real / space.m
    aux2s = np.sum(np.abs(cs) ** 2, axis=(1, 2)) / space.m
    if np.any(np.abs(hccs) <= space.iso_tol * space.j_norm * aux2s):
        raise PreconditionError("the segment meets the absolute",
                                code="segment-hits-absolute")

    identity = np.eye(space.dim * space.m)

    def projector_pair(s):
        c = p0.data * (1.0 - s) + q0.data * s
        cj = c.conj().T @ j
        hcc = float(np.trace(cj @ c).real) / space.m
        a = c @ cj
        adot = cdot @ cj + c @ (cdot.conj().T @ j)
        hdot = 2.0 * float(np.trace(cj @ cdot).real) / space.m
        proj = a / hcc
        proj_dot = adot / hcc - a * (hdot / (hcc * hcc))
        return proj, proj_dot

    def rhs(s, m):
        proj, proj_dot = projector_pair(s)
        return -proj_dot @ m @ proj + (identity - proj) @ m @ proj_dot

    m = t.map.data.copy()
    h = 1.0 / steps
    for i in range(steps):
        s = i * h
        k1 = rhs(s, m)
        k2 = rhs(s + h / 2.0, m + (h / 2.0) * k1)
        k3 = rhs(s + h / 2.0, m + (h / 2.0) * k2)
        k4 = rhs(s + h, m + h * k3)
        m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return observe(q, LinearMap(space, m))


# -- disc model of a complex geodesic and area integration ------------------


def complex_geodesic_basis(points):
    """Orthogonal basis (e_minus, e_plus) of the line spanned by the points,
    normalized to <e-,e-> = -1 and <e+,e+> = +1."""
    space = points[0].space
    stacked = np.hstack([p.rep.data for p in points])
    svals = np.linalg.svd(stacked, compute_uv=False)
    if svals[1] <= 1e-9 * svals[0]:
        raise PreconditionError("the points do not span a line",
                                code="degenerate-triangle")
    if stacked.shape[1] > 2 and svals[2] > 1e-9 * svals[0]:
        raise PreconditionError("the points are not coplanar in one line",
                                code="not-coplanar")
    b1 = points[0].rep
    b2 = None
    for cand in points[1:]:
        paired = np.hstack([b1.data, cand.rep.data])
        sv = np.linalg.svd(paired, compute_uv=False)
        if sv[-1] > 1e-9 * sv[0]:
            b2 = cand.rep
            break
    gram = np.array([[complex(form(b1, b1).complex_value()),
                      complex(form(b1, b2).complex_value())],
                     [complex(form(b2, b1).complex_value()),
                      complex(form(b2, b2).complex_value())]])
    eigvals, eigvecs = np.linalg.eigh(gram)
    if not (eigvals[0] < 0 < eigvals[1]):
        raise PreconditionError("the line is not a complex geodesic",
                                code="not-complex-geodesic")
    basis_data = np.hstack([b1.data, b2.data])
    minus = basis_data @ eigvecs[:, 0:1] / math.sqrt(-eigvals[0])
    plus = basis_data @ eigvecs[:, 1:2] / math.sqrt(eigvals[1])
    return Vector(points[0].space, minus), Vector(points[0].space, plus)


def disc_coordinate(p: ProjPoint, e_minus: Vector, e_plus: Vector) -> complex:
    """Poincare-disc coordinate of a negative or null point of the line."""
    basis = np.hstack([e_minus.data, e_plus.data])
    sol, *_ = np.linalg.lstsq(basis, p.rep.data, rcond=None)
    a, b = complex(sol[0, 0]), complex(sol[1, 0])
    if abs(a) <= 1e-12 * max(abs(b), 1.0):
        raise PreconditionError("the point is the positive pole of the line",
                                code="positive-vertex")
    z = b / a
    r = abs(z)
    if r > 1.0 + 1e-9:
        raise PreconditionError("the point lies outside the closed disc",
                                code="positive-vertex")
    return z / r if r > 1.0 else z


def _side_integral(za: complex, zb: complex, nodes: int) -> float:
    """Line integral of the area primitive along the geodesic arc za -> zb."""
    det = (za.conjugate() * zb).imag
    if abs(det) <= 1e-14 * max(abs(za) * abs(zb), 1e-14):
        return 0.0  # diameter chords carry no angular flux
    rhs = np.array([abs(za) ** 2 + 1.0, abs(zb) ** 2 + 1.0])
    mat = 2.0 * np.array([[za.real, za.imag], [zb.real, zb.imag]])
    cx, cy = np.linalg.solve(mat, rhs)
    c = complex(cx, cy)
    r = 0.5 * (abs(za - c) + abs(zb - c))
    eps = 1.0 + r * r - abs(c) ** 2  # exact zero for a true geodesic circle
    phi_a = math.atan2((za - c).imag, (za - c).real)
    phi_b = math.atan2((zb - c).imag, (zb - c).real)
    delta = math.remainder(phi_b - phi_a, 2.0 * math.pi)
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    phis = phi_a + (xs + 1.0) * (delta / 2.0)
    g = r + (c.conjugate() * np.exp(1j * phis)).real
    integrand = (r * g) / (2.0 * (eps - 2.0 * r * g))
    return float(np.sum(ws * integrand) * (delta / 2.0))


def numeric_area(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint, mesh=64) -> float:
    """Oriented area of the geodesic triangle, integrated in the disc model.

    The curvature -4 area form is integrated through its primitive along
    the three geodesic boundary arcs; orientation is the cyclic order of
    the vertices in the disc coordinate.
    """
    if mesh < 64:
        raise ValidationError("area integration needs mesh >= 64", code="bad-mesh")
    e_minus, e_plus = complex_geodesic_basis([p1, p2, p3])
    zs = [disc_coordinate(p, e_minus, e_plus) for p in (p1, p2, p3)]
    total = 0.0
    for a, b in ((0, 1), (1, 2), (2, 0)):
        total += _side_integral(zs[a], zs[b], mesh)
    return total


# -- arc-length oracle for the distance formulas ----------------------------


def numeric_arc_length(g1: ProjPoint, g2: ProjPoint, nodes=64) -> float:
    """Length of the geodesic segment by quadrature of the metric speed."""
    space = check_same_space(g1.rep, g2.rep)
    require_nonisotropic(g1)
    require_nonisotropic(g2)
    klass = line_classify(g1.rep, g2.rep)
    if klass not in (LineClass.SPHERICAL, LineClass.HYPERBOLIC):
        raise PreconditionError("arc length needs a noneuclidean line",
                                code="euclidean-line")
    h11 = form_re(g1.rep, g1.rep)
    e1 = g1.rep.scale(1.0 / math.sqrt(abs(h11)))
    u = proj_perp(g1, g2.rep)
    huu = form_re(u, u)
    if abs(huu) <= 1e-12 * space.j_norm * u.aux_norm() ** 2:
        raise OrthogonalPointsError("segment endpoints are orthogonal")
    e2 = u.scale(1.0 / math.sqrt(abs(huu)))

    m = space.m
    basis = np.hstack([e1.data, e2.data])
    sol, *_ = np.linalg.lstsq(basis, g2.rep.data, rcond=None)
    a_block = sol[0:m, :]
    b_block = sol[m:2 * m, :]
    ratio_block = b_block @ np.linalg.inv(a_block)
    ratio = float(np.trace(ratio_block).real) / m
    if np.linalg.norm(ratio_block - ratio * np.eye(m)) > 1e-8 * max(abs(ratio), 1.0):
        raise PreconditionError("the segment leaves the real plane",
                                code="off-line")

    if klass is LineClass.SPHERICAL:
        # the segment avoiding the orthopoint of g1 stays in (-pi/2, pi/2)
        t_star = math.atan(ratio)

        def lift(tt):
            return e1.scale(math.cos(tt)) + e2.scale(math.sin(tt))

        def lift_dot(tt):
            return e1.scale(-math.sin(tt)) + e2.scale(math.cos(tt))
    else:
        if abs(ratio) >= 1.0:
            raise PreconditionError("the segment meets the absolute",
                                    code="segment-hits-absolute")
        t_star = math.atanh(ratio)

        def lift(tt):
            return e1.scale(math.cosh(tt)) + e2.scale(math.sinh(tt))

        def lift_dot(tt):
            return e1.scale(math.sinh(tt)) + e2.scale(math.cosh(tt))

    span = abs(t_star)
    if span == 0.0:
        return 0.0
    sign = 1.0 if t_star > 0 else -1.0
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    total = 0.0
    for x, w in zip(xs, ws):
        tt = sign * (x + 1.0) * span / 2.0
        speed_sq = metric(curve_tangent(lift(tt), lift_dot(tt)),
                          curve_tangent(lift(tt), lift_dot(tt)))
        total += w * math.sqrt(abs(speed_sq))
    return total * span / 2.0


# -- admissible random configurations for the theorem suites ----------------


def line_tangent(p: ProjPoint, direction: Vector, k: Scalar) -> Tangent:
    """Tangent at p to the projective line of p and direction: p |-> direction*k."""
    return curve_tangent(p.rep, direction * k)


def random_geodesic_config(space: ClassicSpace, rng, same_component=False,
                           max_tries=400):
    """A noneuclidean geodesic with footpoint data for the transport theorems.

    Returns a dict with the footpoint p, a nonzero geodesic tangent t at
    p, a second line tangent h, a vertical tangent v, the geodesic, and
    an admissible evaluation point g on it.
    """
    from .geodesics import from_tangent
    from .projective import tance as _tance
    from .scalars import one as _one

    for _ in range(max_tries):
        p = random_point(space, rng)
        t = random_tangent(p, rng)
        tp = t.map @ p.rep
        scale = space.j_norm * tp.aux_norm() ** 2
        if abs(form_re(tp, tp)) < 0.05 * scale:
            continue  # keep the geodesic solidly noneuclidean
        geo = from_tangent(p, t)
        k = random_scalar(space.field, rng)
        if abs(k) < 0.1:
            k = _one(space.field)
        h = line_tangent(p, tp, k)
        if h.map.frob_norm() < 1e-6:
            continue

        r = random_vector(space, rng)
        v_vec = proj_perp(p, r) - tp * (form(tp, r) * (1.0 / form_re(tp, tp)))
        if v_vec.aux_norm() < 1e-6:
            continue
        v = curve_tangent(p.rep, v_vec)
        if v.map.frob_norm() < 1e-8:
            continue

        g = _sample_on_geodesic(geo, p, rng, same_component)
        if g is None:
            continue
        return {"p": p, "t": t, "h": h, "v": v, "geo": geo, "g": g}
    raise PreconditionError("no admissible geodesic configuration found",
                            code="sampling-failure")


def _sample_on_geodesic(geo, p, rng, same_component, tries=200):
    from .projective import tance as _tance

    space = geo.space
    for _ in range(tries):
        theta = rng.uniform(0.0, math.pi)
        g = geo.point_at(theta)
        aux = g.rep.aux_norm()
        if abs(form_re(g.rep, g.rep)) < 0.05 * space.j_norm * aux * aux:
            continue
        hpg = form(p.rep, g.rep)
        if abs(hpg) < 0.05 * space.j_norm * p.rep.aux_norm() * aux:
            continue
        if same_point(p, g):
            continue
        if same_component and _tance(p, g) <= 0.05:
            continue
        return g
    return None


def random_euclidean_config(space: ClassicSpace, rng, max_tries=400):
    """Nonisotropic point p with an isotropic direction in p-perp, the
    euclidean geodesic they span, and an evaluation point on it."""
    for _ in range(max_tries):
        p = random_point(space, rng)
        u = _isotropic_in_perp(p, rng)
        if u is None:
            continue
        t = curve_tangent(p.rep, u)
        if t.map.frob_norm() < 1e-8:
            continue
        a = rng.uniform(0.4, 1.6) * (1 if rng.uniform() < 0.5 else -1)
        b = rng.uniform(-1.5, 1.5)
        g = ProjPoint(p.rep.scale(a) + u.scale(b))
        s = random_tangent(p, rng)
        from .geodesics import Geodesic
        geo = Geodesic(p.rep.scale(1.0 / p.rep.aux_norm()),
                       u.scale(1.0 / u.aux_norm()))
        if geo.klass is not LineClass.EUCLIDEAN:
            continue
        return {"p": p, "u": u, "t": t, "s": s, "g": g, "geo": geo}
    raise PreconditionError("no euclidean configuration found",
                            code="sampling-failure")


def _isotropic_in_perp(p: ProjPoint, rng, tries=60):
    """A nonzero isotropic vector orthogonal to p, if the perp is indefinite."""
    space = p.space
    basis = _aux_perp_basis(p)
    try:
        ortho = _form_orthogonalize(basis, space, np.random.default_rng(777))
    except PreconditionError:
        return None
    pos = [v for v in ortho if form_re(v, v) > 0]
    neg = [v for v in ortho if form_re(v, v) < 0]
    if not pos or not neg:
        return None
    for _ in range(tries):
        vp = _combine(pos, space, rng)
        vn = _combine(neg, space, rng)
        a = form_re(vp, vp)
        b = -form_re(vn, vn)
        if a <= 1e-10 or b <= 1e-10:
            continue
        u = vp + vn.scale(math.sqrt(a / b))
        if u.aux_norm() > 1e-6:
            return u
    return None
