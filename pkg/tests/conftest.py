import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import classicgeo as cg
from classicgeo import oracle

settings.register_profile(
    "ci", max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture
def rng():
    return oracle.default_rng(20240901)


@pytest.fixture
def chg_space():
    """Complex hyperbolic plane: C^3, ++-, metric sign -1."""
    return cg.ClassicSpace.from_signature("C", (1, 1, -1), -1)


@pytest.fixture
def disc_space():
    return cg.ClassicSpace.from_signature("C", (1, -1), -1)


@pytest.fixture
def sphere_space():
    return cg.ClassicSpace.from_signature("C", (1, 1), 1)


@pytest.fixture
def real_space():
    return cg.ClassicSpace.from_signature("R", (1, 1, -1), -1)


@pytest.fixture
def quat_space():
    return cg.ClassicSpace.from_signature("H", (1, 1, -1), -1)


def pytest_configure(config):
    np.seterr(all="raise", under="ignore")
