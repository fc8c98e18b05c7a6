import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetaspan import PointSetSpec, generate
from thetaspan.datasets import DISTRIBUTIONS, circle_star


@given(st.sampled_from(DISTRIBUTIONS), st.integers(1, 300), st.integers(0, 2**32 - 1))
def test_size_and_determinism(dist, n, seed):
    spec = PointSetSpec(dist, n, seed)
    a, b = generate(spec), generate(spec)
    assert len(a) == n and a == b


@pytest.mark.parametrize("dist", ["uniform", "grid", "clustered"])
def test_within_bbox(dist):
    pts = generate(PointSetSpec(dist, 200, 1, bbox=(-2.0, 1.0, 3.0, 4.0)))
    c = pts.coords
    assert c[:, 0].min() >= -2 and c[:, 0].max() <= 3
    assert c[:, 1].min() >= 1 and c[:, 1].max() <= 4


def test_seeds_differ():
    assert generate(PointSetSpec("uniform", 50, 1)) != generate(PointSetSpec("uniform", 50, 2))


def test_circle_star_layout():
    pts = circle_star(100)
    c = pts.coords
    assert np.array_equal(c[-1], [0.0, 0.0])
    assert np.allclose(np.hypot(c[:-1, 0], c[:-1, 1]), 1.0)
    ang = np.sort(np.mod(np.arctan2(c[:-1, 1], c[:-1, 0]), 2 * math.pi))
    assert np.allclose(np.diff(ang), 2 * math.pi / 99)


def test_dash_alias_and_validation():
    assert PointSetSpec("circle-star", 5).distribution == "circle_star"
    with pytest.raises(ValueError):
        PointSetSpec("poisson", 5)
    with pytest.raises(ValueError):
        PointSetSpec("uniform", 0)
    with pytest.raises(ValueError):
        PointSetSpec("uniform", 5, bbox=(0, 0, 0, 1))


def test_grid_is_regular():
    c = generate(PointSetSpec("grid", 9, 0)).coords
    assert sorted(set(c[:, 0].tolist())) == [0.0, 0.5, 1.0]
