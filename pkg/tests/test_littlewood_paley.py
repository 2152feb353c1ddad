import numpy as np
import pytest

import psdolab as P
from psdolab.littlewood_paley import bump_profile, smooth_step


def test_smooth_step_endpoints():
    vals = smooth_step(np.array([-0.5, 0.0, 0.5, 1.0, 2.0]))
    assert vals[0] == 0.0
    assert vals[1] == 0.0
    assert vals[2] == pytest.approx(0.5)
    assert vals[3] == 1.0
    assert vals[4] == 1.0


def test_bump_profile_plateau_and_support():
    r = np.array([0.0, 0.5, 1.0, 2.0, 3.0])
    v = bump_profile(r)
    assert v[0] == 1.0 and v[1] == 1.0 and v[2] == 1.0
    assert v[3] == 0.0 and v[4] == 0.0


def test_partition_sums_to_one_exactly(lp):
    # telescoping construction: the residual is a pure roundoff quantity
    assert P.evaluate_partition_residual(lp) == 0.0


def test_piece_supports_are_dyadic_shells(lp):
    r = np.linspace(0.0, 100.0, 4001)
    for k in range(1, lp.piece_count):
        v = lp.piece_profile(k, r)
        live = r[np.abs(v) > 0]
        assert live.min() >= 2.0 ** (k - 1)
        assert live.max() <= 2.0 ** (k + 1)
    v0 = lp.piece_profile(0, r)
    assert np.all(v0[r > 2.0] == 0.0)
    assert np.all(v0[r <= 1.0] == 1.0)


def test_family_max_index_covers_nyquist(grid, lp):
    assert 2.0 ** lp.max_index >= grid.xi_max
    assert lp.max_index == 7


def test_partial_sum_is_dilated_profile(lp):
    r = np.linspace(0.0, 40.0, 801)
    total = np.zeros_like(r)
    for k in range(0, 4):
        total += lp.piece_profile(k, r)
    assert np.max(np.abs(total - bump_profile(r / 8.0))) < 1e-12


@pytest.mark.parametrize("alpha,scaled_sup", [(1, 4.0), (2, 39.3623), (3, 884.276)])
def test_derivative_bounds_scale_dyadically(lp, alpha, scaled_sup):
    rep = P.derivative_bound_check(lp, alpha)
    assert rep.verdict == "pass"
    assert rep.aggregate["slope"] == pytest.approx(-float(alpha), abs=1e-9)
    assert rep.aggregate["max"] == pytest.approx(scaled_sup, rel=1e-3)


def test_derivative_bound_rejects_bad_order(lp):
    with pytest.raises(ValueError):
        P.derivative_bound_check(lp, 0)
    with pytest.raises(ValueError):
        P.derivative_bound_check(lp, 4)
