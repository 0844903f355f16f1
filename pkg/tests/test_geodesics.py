import math

import numpy as np
import pytest

import classicgeo as cg
from classicgeo import (ClassicSpace, LineClass, ProjPoint, Scalar, form,
                        metric, observe, rank_one, same_point, tance)
from classicgeo.errors import (CoincidentPointsError, EuclideanLineError,
                               OrthogonalPointsError, PreconditionError,
                               TanceRangeError)
from classicgeo.geodesics import (CircleClass, Geodesic, b_product,
                                  bisector_normal, circle_classify,
                                  cone_membership, contains, from_tangent,
                                  length, orthogonal_complement_point,
                                  same_geodesic, segment_tangent,
                                  sphere_action, tangency_eq,
                                  tangency_product, through_points)
from classicgeo.oracle import (default_rng, numeric_arc_length, random_point,
                               random_scalar, random_tangent, random_vector)


def pt(space, entries):
    return ProjPoint(space.vector(entries))


def test_through_points_hyperbolic_example(disc_space):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [1, 1])
    geo = through_points(g1, g2)
    assert geo.klass is LineClass.HYPERBOLIC
    assert contains(geo, g1)
    assert contains(geo, g2)


def test_through_points_real_pair_unchanged(disc_space):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [math.sinh(0.7), math.cosh(0.7)])
    geo = through_points(g1, g2)
    direct = Geodesic(g1.rep, g2.rep)
    assert same_geodesic(geo, direct)


def test_through_points_uniqueness_under_rescaling(chg_space, rng):
    for _ in range(25):
        g1 = random_point(chg_space, rng)
        g2 = random_point(chg_space, rng)
        if abs(form(g1.rep, g2.rep)) < 0.05:
            continue
        k1, k2 = random_scalar("C", rng), random_scalar("C", rng)
        if abs(k1) < 0.1 or abs(k2) < 0.1:
            continue
        geo = through_points(g1, g2)
        geo2 = through_points(g1.rescaled(k1), g2.rescaled(k2))
        assert same_geodesic(geo, geo2)


def test_through_points_guards(disc_space):
    g1 = pt(disc_space, [0, 1])
    with pytest.raises(CoincidentPointsError):
        through_points(g1, ProjPoint(g1.rep * Scalar("C", 0, 2)))
    with pytest.raises(OrthogonalPointsError):
        through_points(g1, pt(disc_space, [1, 0]))


def test_from_tangent_example(disc_space):
    p = pt(disc_space, [0, 1])
    t = observe(p, rank_one(disc_space.vector([1, 0]), p.rep))
    geo = from_tangent(p, t)
    assert geo.klass is LineClass.HYPERBOLIC
    assert contains(geo, p)
    assert contains(geo, pt(disc_space, [1, 0]))


def test_from_tangent_segment_roundtrip(chg_space, rng):
    for _ in range(20):
        p = random_point(chg_space, rng)
        q = random_point(chg_space, rng)
        if abs(form(p.rep, q.rep)) < 0.05 or same_point(p, q):
            continue
        t = segment_tangent(p, q)
        geo = from_tangent(p, t)
        assert same_geodesic(geo, through_points(p, q))


def test_from_tangent_real_rescaling(chg_space, rng):
    p = random_point(chg_space, rng)
    t = random_tangent(p, rng)
    geo = from_tangent(p, t)
    geo2 = from_tangent(p, t.scale(-2.5))
    assert same_geodesic(geo, geo2)


def test_contains_real_combination(disc_space, rng):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [1, 1])
    geo = through_points(g1, g2)
    for r in (-2.0, -0.3, 0.8, 5.0):
        x = ProjPoint(geo.w1.scale(r) + geo.w2)
        assert contains(geo, x)


def test_contains_rejects_imaginary_combination(disc_space):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [1, 1])
    geo = through_points(g1, g2)
    x = ProjPoint(geo.w1 * Scalar("C", 0, 1) + geo.w2)
    assert not contains(geo, x)


def test_contains_stability_under_rescaling(disc_space, rng):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [1, 1])
    geo = through_points(g1, g2)
    x = ProjPoint(geo.w1.scale(0.6) + geo.w2)
    y = ProjPoint(geo.w1 * Scalar("C", 0, 1) + geo.w2)
    for _ in range(20):
        k = random_scalar("C", rng)
        if abs(k) < 0.1:
            continue
        assert contains(geo, x.rescaled(k))
        assert not contains(geo, y.rescaled(k))


def test_contains_orthopoint_fallback(sphere_space):
    g1 = pt(sphere_space, [1, 0])
    g2 = pt(sphere_space, [math.cos(0.4), math.sin(0.4)])
    geo = through_points(g1, g2)
    ortho = pt(sphere_space, [0, 1])  # orthogonal to g1, still on the circle
    assert contains(geo, ortho)


def test_tangency_real_direction(disc_space):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [1, 1])
    geo = through_points(g1, g2)
    assert tangency_eq(geo, g1, geo.w2)
    assert not tangency_eq(geo, g1, geo.w2 * Scalar("C", 0, 1))


def test_tangency_gauge_invariance(disc_space, rng):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [1, 1])
    geo = through_points(g1, g2)
    phi = geo.w2
    for _ in range(10):
        k = random_scalar("C", rng)
        shifted = phi + g1.rep * k
        lhs = tangency_product(shifted, g1.rep, geo.w1, geo.w2)
        rhs = tangency_product(phi, g1.rep, geo.w1, geo.w2)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs), abs(k))
        assert tangency_eq(geo, g1, shifted)


def test_length_spherical_pi_third(sphere_space):
    g1 = pt(sphere_space, [1, 0])
    g2 = pt(sphere_space, [math.cos(math.pi / 3), math.sin(math.pi / 3)])
    assert tance(g1, g2) == pytest.approx(0.25, abs=1e-14)
    assert length(g1, g2) == pytest.approx(math.pi / 3, abs=1e-12)
    assert numeric_arc_length(g1, g2) == pytest.approx(math.pi / 3, abs=1e-10)


def test_length_hyperbolic_unit(disc_space):
    g1 = pt(disc_space, [0, 1])
    g2 = pt(disc_space, [math.sinh(1.0), math.cosh(1.0)])
    assert length(g1, g2) == pytest.approx(1.0, abs=1e-12)
    assert numeric_arc_length(g1, g2) == pytest.approx(1.0, abs=1e-9)


def test_length_coincident_and_guards(disc_space, chg_space):
    g1 = pt(disc_space, [0, 1])
    assert length(g1, ProjPoint(g1.rep * Scalar("C", 2, 1))) == 0.0
    with pytest.raises(EuclideanLineError):
        length(pt(chg_space, [1, 0, 0]), pt(chg_space, [1, 1, 1]))
    # mixed components of a hyperbolic line: tance below 1
    with pytest.raises(TanceRangeError):
        length(pt(disc_space, [0, 1]), pt(disc_space, [1, 0.2]))


def test_length_additivity_along_segments(disc_space):
    g1 = pt(disc_space, [0, 1])
    for a, b in ((0.3, 0.9), (-0.4, 0.8), (0.1, 1.7)):
        mid = pt(disc_space, [math.sinh(a), math.cosh(a)])
        far = pt(disc_space, [math.sinh(b), math.cosh(b)])
        total = length(g1, far) if a * b > 0 and abs(a) < abs(b) else None
        if total is not None:
            assert (length(g1, mid) + length(mid, far)
                    == pytest.approx(total, abs=1e-9))


def test_spherical_tance_bounds(sphere_space, rng):
    for _ in range(100):
        g1 = random_point(sphere_space, rng)
        g2 = random_point(sphere_space, rng)
        ta = tance(g1, g2)
        assert -1e-12 <= ta <= 1.0 + 1e-12


def test_segment_tangent_formula(disc_space):
    p = pt(disc_space, [0, 1])
    q = pt(disc_space, [math.sinh(1.0), math.cosh(1.0)])
    t = segment_tangent(p, q)
    image = t.map @ p.rep
    expected = disc_space.vector([math.sinh(1.0) / math.cosh(1.0), 0])
    assert (image - expected).aux_norm() <= 1e-12


def test_segment_tangent_representative_invariance(chg_space, rng):
    for _ in range(20):
        p = random_point(chg_space, rng)
        q = random_point(chg_space, rng)
        if same_point(p, q) or abs(form(p.rep, q.rep)) < 0.05:
            continue
        t = segment_tangent(p, q)
        k1, k2 = random_scalar("C", rng), random_scalar("C", rng)
        if abs(k1) < 0.1 or abs(k2) < 0.1:
            continue
        t2 = segment_tangent(p.rescaled(k1), q.rescaled(k2))
        assert (t.map - t2.map).frob_norm() <= 1e-10 * max(1.0, t.map.frob_norm())


def test_euclidean_geodesic_contains_isotropic_point(chg_space):
    p1 = pt(chg_space, [1, 0, 0])
    p2 = pt(chg_space, [1, 1, 1])
    geo = through_points(p1, p2)
    assert geo.klass is LineClass.EUCLIDEAN
    iso = pt(chg_space, [0, 1, 1])
    assert contains(geo, iso)


def test_b_product_representative_scaling(quat_space, rng):
    g1 = random_point(quat_space, rng)
    g2 = random_point(quat_space, rng)
    x = random_point(quat_space, rng)
    b0 = b_product(x.rep, g1.rep, g2.rep)
    k = random_scalar("H", rng)
    b1 = b_product((x.rep * k), g1.rep, g2.rep)
    # b(xk) = conj(k) b(x) k, so the absolute value scales by |k|^2
    assert abs(b1) == pytest.approx(abs(k) ** 2 * abs(b0), rel=1e-10, abs=1e-12)


# -- cones and bisector normals ---------------------------------------------


def _spine(chg_space):
    g1 = pt(chg_space, [0, 0, 1])
    g2 = pt(chg_space, [math.sinh(0.8), 0, math.cosh(0.8)])
    return g1, g2


def test_cone_contains_spine_and_vertex(chg_space):
    g1, g2 = _spine(chg_space)
    assert cone_membership(g1, g1, g2)
    assert cone_membership(g2, g1, g2)
    vertex = orthogonal_complement_point([g1.rep, g2.rep])
    assert cone_membership(vertex, g1, g2)
    off = ProjPoint(chg_space.vector([Scalar("C", 0, 0.3), 0.1, 1]))
    assert not cone_membership(off, g1, g2)


def test_cone_membership_slice_points(chg_space):
    g1, g2 = _spine(chg_space)
    # points of the slice through g1: span of g1 and the vertex
    vertex = orthogonal_complement_point([g1.rep, g2.rep])
    x = ProjPoint(g1.rep + vertex.rep * Scalar("C", 0.4, 0.9))
    assert cone_membership(x, g1, g2)


def test_bisector_normal_orthogonal_to_cone_tangents(chg_space, rng):
    g1, g2 = _spine(chg_space)
    geo = through_points(g1, g2)
    q = ProjPoint(g1.rep.scale(math.cosh(0.3))
                  + orthogonal_complement_point([g1.rep, g2.rep]).rep.scale(math.sinh(0.3)))
    assert cone_membership(q, g1, g2)
    n = bisector_normal(q, g1, g2)

    def t_functional(tan):
        value = tangency_product(tan.map @ q.rep, q.rep, geo.w1, geo.w2)
        return value.b  # purely imaginary over C

    checked = 0
    attempts = 0
    while checked < 20 and attempts < 400:
        attempts += 1
        a = random_tangent(q, rng)
        b = random_tangent(q, rng)
        la, lb = t_functional(a), t_functional(b)
        s = a.scale(lb) - b.scale(la)  # tangent to the cone by linearity
        if s.map.frob_norm() < 1e-10:
            continue
        assert abs(t_functional(s)) <= 1e-9 * max(1.0, abs(la), abs(lb))
        assert metric(n, s) == pytest.approx(0.0, abs=1e-9)
        checked += 1
    assert checked == 20


def test_bisector_normal_guards(chg_space):
    g1, g2 = _spine(chg_space)
    off = ProjPoint(chg_space.vector([Scalar("C", 0, 0.3), 0.1, 1]))
    with pytest.raises(PreconditionError):
        bisector_normal(off, g1, g2)


# -- the sphere action -------------------------------------------------------


def test_sphere_action_identity(rng):
    space = ClassicSpace.from_signature("H", (1, -1), -1)
    p = random_point(space, rng)
    t = random_tangent(p, rng)
    k = Scalar("H", 1.0)
    moved, moved_t = sphere_action(k, p, t)
    assert same_point(moved, p)
    assert (moved_t.map - t.map).frob_norm() <= 1e-12


def test_sphere_action_is_isometry(rng):
    space = ClassicSpace.from_signature("H", (1, -1), -1)
    for _ in range(25):
        p = random_point(space, rng)
        t1 = random_tangent(p, rng)
        t2 = random_tangent(p, rng)
        k = random_scalar("H", rng)
        k = k * (1.0 / abs(k))
        moved, mt1 = sphere_action(k, p, t1)
        _, mt2 = sphere_action(k, p, t2)
        assert metric(mt1, mt2) == pytest.approx(metric(t1, t2), rel=1e-10, abs=1e-10)


def test_sphere_action_fixes_real_geodesic(rng):
    space = ClassicSpace.from_signature("H", (1, -1), -1)
    for theta in (0.1, 0.7, 2.1):
        p = ProjPoint(space.vector([math.cos(theta), math.sin(theta)]))
        t = random_tangent(p, rng)
        for _ in range(5):
            k = random_scalar("H", rng)
            k = k * (1.0 / abs(k))
            moved, _ = sphere_action(k, p, t)
            assert same_point(moved, p)


def test_sphere_action_guards(rng):
    space = ClassicSpace.from_signature("H", (1, -1), -1)
    p = random_point(space, rng)
    t = random_tangent(p, rng)
    with pytest.raises(PreconditionError):
        sphere_action(Scalar("H", 2.0), p, t)
    cspace = ClassicSpace.from_signature("C", (1, -1), -1)
    with pytest.raises(Exception):
        sphere_action(Scalar("H", 1.0), random_point(cspace, rng), t)


# -- circles -----------------------------------------------------------------


def test_circle_classification(disc_space):
    v = disc_space.vector
    # metric circle: definite real part
    assert circle_classify(v([1, 0]), v([0, 1])) in (CircleClass.HYPERCYCLE,)
    sph = ClassicSpace.from_signature("C", (1, 1), 1)
    assert circle_classify(sph.vector([1, 0]), sph.vector([0, 1])) is CircleClass.METRIC_CIRCLE
    # absolute: a null real plane
    iso1 = disc_space.vector([1, 1])
    iso2 = disc_space.vector([Scalar("C", 0, 1), Scalar("C", 0, 1)])
    assert circle_classify(iso1, iso2) is CircleClass.ABSOLUTE
    # horocycle: degenerate but not null real part
    horo = disc_space.vector([Scalar("C", 0, 1), Scalar("C", 0, 1)])
    assert circle_classify(v([0, 1]), horo) is CircleClass.HOROCYCLE
