import numpy as np
import pytest

import psdolab as P


@pytest.fixture(scope="module")
def family(grid):
    return P.sweep_family(grid)


@pytest.fixture(scope="module")
def family_inside(grid):
    return P.sweep_family(grid, inside_only=True)


def test_unit_weight_characteristic_is_one(grid, family):
    w = P.preset_weight("unit", grid)
    ap = P.ap_theta_characteristic(w, 2.0, 0.0, family)
    assert ap.value == pytest.approx(1.0, abs=1e-12)


def test_power_weight_characteristic_decreases_in_p(grid, family):
    w = P.preset_weight("power_growth", grid, gamma=1.5)
    rep = P.check_monotonicity(w, 2.0, 3.0, 1.5, family)
    assert rep.verdict == "pass"
    assert rep.aggregate["ratio_q_over_p"] == pytest.approx(0.9966821335751274, rel=1e-9)


def test_characteristic_needs_ordered_exponents(grid, family):
    w = P.preset_weight("unit", grid)
    with pytest.raises(ValueError):
        P.check_monotonicity(w, 3.0, 2.0, 0.0, family)


def test_strong_power_weight_dichotomy(grid, family):
    """(1+|x|)^2 sits outside the untwisted class but inside the theta=2 one."""
    w = P.preset_weight("power_growth", grid, gamma=2.0)
    flat = P.stabilized_characteristic(w, 2.0, 0.0, family)
    assert not flat.stable
    assert flat.growth_slope == pytest.approx(0.2907993623569875, rel=1e-9)
    twisted = P.stabilized_characteristic(w, 2.0, 2.0, family)
    assert twisted.stable
    assert abs(twisted.growth_slope) < 1e-12
    assert twisted.values[-1] == pytest.approx(0.6476, abs=2e-4)


def test_openness_of_the_weight_class(grid, family):
    w = P.preset_weight("power_growth", grid, gamma=1.5)
    rep = P.check_openness(w, 2.0, 1.5, family)
    assert rep.verdict == "pass"


def test_random_log_bounded_weight_is_reproducible(grid):
    w1 = P.preset_weight("random_log_bounded", grid, seed=5)
    w2 = P.preset_weight("random_log_bounded", grid, seed=5)
    assert np.array_equal(w1.values, w2.values)
    w3 = P.preset_weight("random_log_bounded", grid, seed=6)
    assert not np.array_equal(w1.values, w3.values)
    assert np.all(w1.values > 0)


def test_linear_multiplier_oscillation_norm(grid, family_inside):
    b = P.preset_bmo("linear", grid)
    bn = P.bmo_theta_norm(b, 1.0, family_inside)
    assert bn.value == pytest.approx(0.4453108078839073, rel=1e-9)
    assert bn.maximizing_ball is not None


def test_constant_multiplier_has_zero_norm(grid, family_inside):
    b = P.preset_bmo("constant", grid, value=3.0)
    bn = P.bmo_theta_norm(b, 1.0, family_inside)
    assert bn.value == 0.0


def test_triangle_multiplier_norm_small(grid, family_inside):
    b = P.preset_bmo("triangle", grid)
    bn = P.bmo_theta_norm(b, 1.0, family_inside)
    assert bn.value == pytest.approx(0.05477404530612142, rel=1e-9)


def test_untwisted_linear_norm_grows(grid, family_inside):
    # without the theta discount the sup tracks the largest ball
    b = P.preset_bmo("linear", grid)
    bn = P.bmo_theta_norm(b, 0.0, family_inside)
    assert bn.value == pytest.approx(4.007797270955166, rel=1e-9)


def test_exponential_integrability_variant(grid):
    b = P.preset_bmo("linear", grid)
    rep = P.check_john_nirenberg_variant(b, 1.0, 2.0, P.Ball((0.0,), 0.5))
    assert rep.verdict == "pass"
    agg = rep.aggregate
    assert agg["max"] == pytest.approx(1.1547027322239467, rel=1e-9)
    assert agg["median"] == pytest.approx(0.6583064677500235, rel=1e-9)
    assert agg["part_ii_max"] <= agg["max"]
    assert agg["skipped_dilates"] == 1
