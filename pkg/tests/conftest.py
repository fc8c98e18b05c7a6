import pytest

from thetaspan import PointSet, PointSetSpec, generate


def uniform_points(n: int, seed: int) -> PointSet:
    return generate(PointSetSpec("uniform", n, seed))


@pytest.fixture
def pts50():
    return uniform_points(50, 11)


@pytest.fixture
def pts100():
    return uniform_points(100, 7)
