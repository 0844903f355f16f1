import math

import numpy as np
import pytest

import classicgeo as cg
from classicgeo import (ClassicSpace, ProjPoint, Scalar, curve_tangent, form,
                        hmetric, metric, observe, rank_one, spread)
from classicgeo.errors import ValidationError
from classicgeo.oracle import (default_rng, random_point, random_scalar,
                               random_tangent, random_vector)
from classicgeo.projective import proj_para_map, proj_perp_map


def test_observe_identity_is_zero(disc_space):
    p = ProjPoint(disc_space.vector([0, 1]))
    t = observe(p, disc_space.identity_map())
    assert t.map.frob_norm() <= 1e-14


def test_observe_idempotent(chg_space, rng):
    p = random_point(chg_space, rng)
    t = random_tangent(p, rng)
    again = observe(p, t.map)
    assert (again.map - t.map).frob_norm() <= 1e-13


def test_observe_block_structure():
    space = ClassicSpace.from_signature("R", (1, -1))
    p = ProjPoint(space.vector([1, 0]))
    raw = space.linear_map([[2, 3], [5, 7]])
    t = observe(p, raw)
    entries = t.map.entries()
    assert entries[0][0] == Scalar("R", 0.0)
    assert entries[0][1] == Scalar("R", 0.0)
    assert entries[1][1] == Scalar("R", 0.0)
    assert entries[1][0] == Scalar("R", 5.0)


def test_tangent_invariants(chg_space, rng):
    p = random_point(chg_space, rng)
    t = random_tangent(p, rng)
    pi = proj_perp_map(p)
    pi_prime = proj_para_map(p)
    sandwich = pi @ t.map @ pi_prime
    assert (sandwich - t.map).frob_norm() <= 1e-12
    assert (t.map @ t.map).frob_norm() <= 1e-12


def test_metric_rank_one_normalization(sphere_space):
    v = sphere_space.vector([0, 1])
    p = ProjPoint(sphere_space.vector([1, 0]))
    t = observe(p, rank_one(v, p.rep))
    assert metric(t, t) == pytest.approx(1.0, abs=1e-12)


def test_metric_orthogonal_images(chg_space):
    p = ProjPoint(chg_space.vector([0, 0, 1]))
    t1 = observe(p, rank_one(chg_space.vector([1, 0, 0]), p.rep))
    t2 = observe(p, rank_one(chg_space.vector([0, 1, 0]), p.rep))
    assert metric(t1, t2) == pytest.approx(0.0, abs=1e-13)


def test_sphere_metric_positive_definite(sphere_space, rng):
    for _ in range(100):
        p = random_point(sphere_space, rng)
        t = random_tangent(p, rng)
        assert metric(t, t) > 0.0


def test_poincare_disc_metric_positive_definite(disc_space, rng):
    for _ in range(60):
        p = random_point(disc_space, rng, cg.PointClass.NEGATIVE)
        t = random_tangent(p, rng)
        assert metric(t, t) > 0.0


def test_hmetric_relations(chg_space, rng):
    p = random_point(chg_space, rng)
    t1 = random_tangent(p, rng)
    t2 = random_tangent(p, rng)
    h12 = hmetric(t1, t2)
    h21 = hmetric(t2, t1)
    assert abs(h12 - cg.conj(h21)) <= 1e-12 * max(1.0, abs(h12))
    assert h12.a == pytest.approx(metric(t1, t2), rel=1e-12, abs=1e-14)


def test_hmetric_needs_c(quat_space, rng):
    p = random_point(quat_space, rng)
    t = random_tangent(p, rng)
    with pytest.raises(ValidationError):
        hmetric(t, t)


def test_metric_symmetry(quat_space, rng):
    p = random_point(quat_space, rng)
    t1 = random_tangent(p, rng)
    t2 = random_tangent(p, rng)
    assert metric(t1, t2) == pytest.approx(metric(t2, t1), rel=1e-12, abs=1e-14)


def test_curve_tangent_kills_scalar_directions(chg_space, rng):
    p = random_point(chg_space, rng)
    k = random_scalar("C", rng)
    t = curve_tangent(p.rep, p.rep * k)
    assert t.map.frob_norm() <= 1e-12


def test_curve_tangent_spherical_lift(sphere_space):
    g1 = sphere_space.vector([1, 0])
    g1p = sphere_space.vector([0, 1])
    t = curve_tangent(g1, g1p)
    image = t.map @ g1
    assert (image - g1p).aux_norm() <= 1e-13
    assert metric(t, t) == pytest.approx(1.0, abs=1e-12)


def test_curve_tangent_unit_speed_along_lift(sphere_space):
    g1 = sphere_space.vector([1, 0])
    g1p = sphere_space.vector([0, 1])
    for tt in np.linspace(0.0, 1.3, 7):
        c0 = g1.scale(math.cos(tt)) + g1p.scale(math.sin(tt))
        c0dot = g1.scale(-math.sin(tt)) + g1p.scale(math.cos(tt))
        t = curve_tangent(c0, c0dot)
        assert metric(t, t) == pytest.approx(1.0, abs=1e-12)


def test_spread_examples(chg_space, rng):
    p = random_point(chg_space, rng)
    t = random_tangent(p, rng)
    assert (spread(t, p).map - t.map).frob_norm() <= 1e-13
    # spread to a point of the polar line vanishes
    perp = cg.proj_perp(p, random_vector(chg_space, rng))
    x = ProjPoint(perp)
    assert spread(t, x).map.frob_norm() <= 1e-12


def test_spread_representative_invariance(chg_space, rng):
    p = random_point(chg_space, rng)
    t = random_tangent(p, rng)
    x = random_point(chg_space, rng)
    k = random_scalar("C", rng)
    if abs(k) < 0.1:
        k = Scalar("C", 1.0)
    direct = spread(t, x)
    rescaled = spread(t, x.rescaled(k))
    assert (direct.map - rescaled.map).frob_norm() <= 1e-10
