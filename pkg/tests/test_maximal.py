import numpy as np
import pytest

import psdolab as P
from psdolab.corpus import gaussian_corpus, mixed_corpus


@pytest.fixture(scope="module")
def cover(grid):
    return P.build_critical_cover(grid)


def test_cover_partitions_the_box(grid, cover):
    assert cover.radius == 1.0
    assert len(cover.centers) == 78
    assert cover.covers_pointwise()


def test_cover_multiplicity_is_controlled(cover):
    for sigma in (1.0, 2.0, 4.0, 8.0):
        mult = int(np.max(cover.multiplicity(sigma)))
        assert mult <= 10.0 * sigma


def test_local_maximal_dominates_function(grid):
    f = P.sample(grid, lambda x: (np.abs(x) <= 1.0).astype(float))
    m = P.m_loc(f, 1.0)
    assert float(np.max(m.values.real)) == pytest.approx(1.0, abs=1e-12)
    assert np.all(m.values.real >= -1e-15)


def test_local_sharp_of_indicator(grid):
    f = P.sample(grid, lambda x: (np.abs(x) <= 1.0).astype(float))
    ms = P.m_sharp_loc(f, 1.0)
    # largest mean oscillation straddles the jump
    assert float(np.max(ms.values.real)) == pytest.approx(0.4998816568047337, rel=1e-9)


def test_series_maximal_of_constant_is_exact(grid, cover):
    one = P.sample(grid, lambda x: np.ones_like(x))
    gk = P.g_kappa_p(one, 1.0, 2.0, cover, n_big=8)
    analytic = 1.0 / (1.0 - 2.0 ** -8)
    assert float(np.max(np.abs(gk.values.real - analytic))) < 1e-13
    assert float(np.min(gk.values.real)) == pytest.approx(analytic, rel=1e-13)


def test_cover_maximal_of_constant_is_one(grid, cover):
    one = P.sample(grid, lambda x: np.ones_like(x))
    mt = P.m_tilde_s(one, 1.5, cover)
    assert float(np.max(mt.values.real)) == 1.0
    assert float(np.min(mt.values.real)) == 1.0


def test_sharp_control_on_constant(grid, cover):
    one = P.sample(grid, lambda x: np.ones_like(x))
    w = P.preset_weight("power_growth", grid, gamma=1.5)
    rep = P.check_fs_inequality(one, w, 2.0, cover)
    assert rep.verdict == "pass"
    assert rep.aggregate["ratio"] == pytest.approx(0.20446992073866574, rel=1e-9)


def test_sharp_control_over_mixed_corpus(grid, cover):
    w = P.preset_weight("power_growth", grid, gamma=1.5)
    ratios = []
    for _, f, _ in mixed_corpus(grid, count=30, seed=7):
        ratios.append(P.check_fs_inequality(f, w, 2.0, cover).aggregate["ratio"])
    ratios = np.array(ratios)
    assert len(ratios) == 30
    assert ratios.max() <= 4.0 * np.median(ratios)


def test_weighted_maximal_bounds_frozen(grid, cover):
    w = P.preset_weight("power_growth", grid, gamma=1.5)
    half = grid.half_length
    corpus = gaussian_corpus(grid, centers=np.linspace(0.4 * half, 0.5 * half, 6),
                             widths=(0.6, 1.0, 1.8), modulations=(0,))
    rep = P.check_weighted_bounds_maximal(corpus, w, 2.0, 1.5, 1.5, cover)
    assert rep.verdict == "pass"
    agg = rep.aggregate
    assert agg["series_max"] == pytest.approx(1.2749422677783737, rel=1e-9)
    assert agg["cover_max"] == pytest.approx(1.895807980930648, rel=1e-9)
    assert abs(agg["series_trend"]) <= 0.1
    assert abs(agg["cover_trend"]) <= 0.1
    assert agg["gate_stable"] is True
