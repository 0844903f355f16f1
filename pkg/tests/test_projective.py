import math

import numpy as np
import pytest

import classicgeo as cg
from classicgeo import (ClassicSpace, LineClass, PointClass, ProjPoint,
                        Scalar, classify, form, gram_det, line_classify,
                        orthopoint_in_line, proj_para, proj_perp, same_point,
                        tance)
from classicgeo.errors import (CoincidentPointsError, IsotropicPointError,
                               PreconditionError)
from classicgeo.oracle import (default_rng, random_isometry, random_point,
                               random_scalar, random_vector)

COSH2_1 = math.cosh(1.0) ** 2  # tance of the unit-distance hyperbolic pair


def point(space, entries):
    return ProjPoint(space.vector(entries))


def test_classify_examples(chg_space):
    assert classify(point(chg_space, [0, 0, 1])) is PointClass.NEGATIVE
    assert classify(point(chg_space, [1, 0, 1])) is PointClass.NULL
    space2 = ClassicSpace.from_signature("C", (1, -1))
    assert classify(point(space2, [2, 1])) is PointClass.POSITIVE


def test_projection_examples():
    space = ClassicSpace.from_signature("R", (1, -1))
    p = point(space, [1, 0])
    v = space.vector([3, 5])
    assert proj_para(p, v).entries() == [Scalar("R", 3.0), Scalar("R", 0.0)]
    assert proj_perp(p, v).entries() == [Scalar("R", 0.0), Scalar("R", 5.0)]
    assert proj_perp(p, p.rep).is_zero()


def test_projection_defining_identity(chg_space, rng):
    for _ in range(50):
        p = random_point(chg_space, rng)
        v = random_vector(chg_space, rng)
        assert proj_para(p, v) + proj_perp(p, v) - v
        total = proj_para(p, v) + proj_perp(p, v) - v
        assert total.aux_norm() <= 1e-12 * v.aux_norm()
        assert abs(form(p.rep, proj_perp(p, v))) <= 1e-12 * v.aux_norm()


def test_projection_rejects_isotropic(chg_space):
    with pytest.raises(IsotropicPointError):
        proj_para(point(chg_space, [1, 0, 1]), chg_space.vector([1, 0, 0]))


def test_tance_examples(disc_space):
    p = point(disc_space, [0, 1])
    q = point(disc_space, [1, 0])
    assert tance(p, q) == 0.0
    assert tance(p, p) == pytest.approx(1.0)
    far = point(disc_space, [math.sinh(1.0), math.cosh(1.0)])
    assert tance(p, far) == pytest.approx(COSH2_1, abs=1e-12)


def test_gram_det_examples():
    hyp = ClassicSpace.from_signature("R", (1, -1))
    assert gram_det(hyp.vector([1, 0]), hyp.vector([0, 1])) == pytest.approx(-1.0)
    sph = ClassicSpace.from_signature("R", (1, 1))
    assert gram_det(sph.vector([1, 0]), sph.vector([0, 1])) == pytest.approx(1.0)


def test_gram_det_dependent_vectors(quat_space, rng):
    for _ in range(25):
        p = random_vector(quat_space, rng)
        k = random_scalar("H", rng)
        q = p * k
        scale = (p.aux_norm() * q.aux_norm()) ** 2
        assert abs(gram_det(p, q)) <= 1e-10 * max(scale, 1e-12)


def test_orthopoint_examples():
    space = ClassicSpace.from_signature("R", (1, -1))
    p = point(space, [1, 0])
    q = point(space, [1, 1])
    r = orthopoint_in_line(p, q)
    assert same_point(r, point(space, [0, 1]))
    again = orthopoint_in_line(p, r)
    assert same_point(again, r)
    with pytest.raises(CoincidentPointsError):
        orthopoint_in_line(p, ProjPoint(p.rep.scale(2.0)))


def test_orthopoint_defining_property(chg_space, rng):
    for _ in range(40):
        p = random_point(chg_space, rng)
        q = random_point(chg_space, rng)
        if same_point(p, q):
            continue
        r = orthopoint_in_line(p, q)
        assert abs(form(p.rep, r.rep)) <= 1e-12 * p.rep.aux_norm() * r.rep.aux_norm() * 3


def test_line_classify_examples(chg_space):
    v = chg_space.vector
    assert line_classify(v([1, 0, 0]), v([0, 0, 1])) is LineClass.HYPERBOLIC
    assert line_classify(v([1, 0, 0]), v([0, 1, 0])) is LineClass.SPHERICAL
    assert line_classify(v([1, 0, 0]), v([0, 1, 1])) is LineClass.EUCLIDEAN


def test_line_classify_rejects_dependent(chg_space):
    v = chg_space.vector([1, 2, 0])
    with pytest.raises(PreconditionError):
        line_classify(v, v * Scalar("C", 0, 3))


def test_representative_invariance(chg_space, rng):
    for _ in range(100):
        p = random_point(chg_space, rng)
        q = random_point(chg_space, rng)
        k1 = _bounded_scalar(rng, "C")
        k2 = _bounded_scalar(rng, "C")
        p2, q2 = p.rescaled(k1), q.rescaled(k2)
        assert classify(p2) is classify(p)
        assert tance(p2, q2) == pytest.approx(tance(p, q), rel=1e-9, abs=1e-12)
        assert tance(p, q) == pytest.approx(tance(q, p), rel=1e-12, abs=1e-15)


def _bounded_scalar(rng, field):
    while True:
        k = random_scalar(field, rng)
        if 0.1 <= abs(k) <= 10.0:
            return k


def test_isometry_invariance_of_tance(chg_space, rng):
    for trial in range(20):
        u = random_isometry(chg_space, rng)
        p = random_point(chg_space, rng)
        q = random_point(chg_space, rng)
        up = ProjPoint(u @ p.rep)
        uq = ProjPoint(u @ q.rep)
        assert tance(up, uq) == pytest.approx(tance(p, q), rel=1e-9, abs=1e-11)
        assert classify(up) is classify(p)


def test_same_point_tolerates_isotropic(chg_space):
    v = point(chg_space, [1, 0, 1])
    w = ProjPoint(v.rep * Scalar("C", 0.3, -1.2))
    assert same_point(v, w)
    assert not same_point(v, point(chg_space, [0, 1, 1]))
