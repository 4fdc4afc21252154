"""Pytest configuration and fixtures for patchsurvival tests."""

import pytest

from patchsurvival.constants import Family
from patchsurvival.dist import InitialProfile
from patchsurvival.scaling import ModelExponents, problem_from_q
from patchsurvival.solver import FatePolicy, GridSpec


@pytest.fixture
def coarse_spec():
    """Coarse grid that keeps linear (mu = nu = 1) runs well under a second."""
    return GridSpec(m=20, k_over_h2=1.0, t_max=100.0)


@pytest.fixture
def linear_spec():
    """Grid for the mu = nu = 1 oracle runs."""
    return GridSpec(m=40, k_over_h2=1.0, t_max=200.0)


@pytest.fixture
def moderate_grid():
    """Grid (m = 100) used by the slow threshold reproductions."""
    return GridSpec(m=100, k_over_h2=1.0, t_max=50.0)


@pytest.fixture
def policy():
    """Default fate thresholds."""
    return FatePolicy()


@pytest.fixture
def linear_exps():
    """mu = nu = 1: the linear problem with Q_c = pi^2."""
    return ModelExponents(1.0, 1.0)


@pytest.fixture
def homogeneous():
    """Homogeneous initial profile."""
    return InitialProfile.create(Family.HOMOGENEOUS)


@pytest.fixture
def linear_problem(linear_exps, homogeneous):
    """Factory for linear problems at a given Q."""

    def make(q):
        return problem_from_q(linear_exps, q, homogeneous)

    return make
