import math

import numpy as np
import pytest

from thetaspan import t_function
from thetaspan.lemmas import CASES, reproduce_tables, stretch_constant
from thetaspan.lemmas.constants import EDGE_STRETCH, PUBLISHED, SPANNING_RATIO, T, edge_stretch

PI = math.pi
TABLE = {
    (15, "C62_low_beta"): 8.3760, (15, "C62_high_beta"): 6.2720,
    (18, "C62_low_beta"): 3.9058, (18, "C62_high_beta"): 3.3377,
    (21, "C62_low_beta"): 2.8109, (21, "C62_high_beta"): 2.5014,
    (24, "C62_low_beta"): 2.3159, (24, "C62_high_beta"): 2.1057,
    (15, "C66_low_alpha"): 4.9454, (15, "C66_high_alpha_or_C65"): 6.1397,
    (18, "C66_low_alpha"): 2.9697, (18, "C66_high_alpha_or_C65"): 3.3157,
    (21, "C66_low_alpha"): 2.3117, (21, "C66_high_alpha_or_C65"): 2.4936,
    (24, "C66_low_alpha"): 1.9829, (24, "C66_high_alpha_or_C65"): 2.1020,
}


def test_published_values_are_the_table():
    assert PUBLISHED == TABLE


@pytest.mark.parametrize("key", sorted(TABLE))
def test_table_entry(key):
    q, case = key
    t = stretch_constant(PI / q, case).t
    assert abs(t - TABLE[key]) / TABLE[key] <= 5e-3


def test_reproduce_tables_all_match():
    rows = reproduce_tables(grid=400)
    assert len(rows) == 16 and all(r.matches() for r in rows)


def test_intermediate_constants_at_pi_15():
    th = PI / 15
    assert stretch_constant(th, "C62_low_beta").objective < 0.88
    assert stretch_constant(th, "C62_high_beta").objective < 0.8397
    assert stretch_constant(th, "C66_low_alpha").objective >= 0.2022
    assert stretch_constant(th, "C66_high_alpha_or_C65").objective <= 0.8363


def _x(th, g, b):
    t = lambda a: (math.sin(PI / 3 - a) - math.sin(a)) / math.sin(PI / 3)
    return t(g) + t(g) / math.cos(th / 2) - 2 * t(b) * math.sin(PI / 3 + g) / math.sin(PI / 3 + b)


def _y(th, g, b):
    t = lambda a: (math.sin(PI / 3 - a) - math.sin(a)) / math.sin(PI / 3)
    return t(g) + (t(g) - 2 * t(b)) / math.cos(th / 2)


@pytest.mark.parametrize("q", [15, 18, 21, 24])
def test_optimiser_against_random_search(q):
    """Random sampling of the angle box never beats the optimiser and comes close to it."""
    th = PI / q
    rng = np.random.default_rng(q)
    g_lo = rng.uniform(0, PI / 6 - th / 2, 20_000)
    b_lo = g_lo + rng.uniform(0, 1, 20_000) * (np.minimum(PI / 6, g_lo + th) - g_lo)
    best_x = max(_x(th, g, b) for g, b in zip(g_lo, b_lo))
    g_hi = rng.uniform(PI / 6 - th, PI / 6 - th / 2, 20_000)
    b_hi = PI / 6 + rng.uniform(0, 1, 20_000) * (g_hi + th - PI / 6)
    best_y = max(_y(th, g, b) for g, b in zip(g_hi, b_hi))
    x = stretch_constant(th, "C62_low_beta").objective
    y = stretch_constant(th, "C62_high_beta").objective
    assert best_x <= x + 1e-12 and x - best_x < 1e-2
    assert best_y <= y + 1e-12 and y - best_y < 1e-2


def test_z_minimum_closed_form():
    # Z decreases in alpha, so its minimum sits at alpha = pi/6
    for q in (15, 18, 21, 24):
        th = PI / q
        z = (math.sin(PI / 6 - th) - math.sin(th)) / math.sin(PI / 6)
        assert stretch_constant(th, "C66_low_alpha").objective == pytest.approx(z, abs=1e-9)


def test_t_function_agrees_with_vector_form():
    a = np.linspace(0, PI / 3, 101)
    assert np.allclose(T(a), [t_function(x) for x in a], atol=1e-15)


def test_edge_stretch_within_quoted_constants():
    for kp, quoted in EDGE_STRETCH.items():
        t = edge_stretch(PI / (3 * kp), grid=400)
        assert t <= quoted + 5e-3 * quoted
        # the overall spanning ratio doubles the per-edge stretch
        assert 2 * quoted == pytest.approx(SPANNING_RATIO[kp], abs=0.01)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        stretch_constant(PI / 12, "C62_low_beta")
    with pytest.raises(ValueError):
        stretch_constant(PI / 18, "C63")
    with pytest.raises(ValueError):
        stretch_constant(PI / 18, "C62_low_beta", grid=2)
    assert set(CASES) == {c for _, c in TABLE}
