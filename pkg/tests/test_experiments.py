"""End-to-end runs of every experiment at the default configuration.

Aggregates are frozen against measured values; the runs are deterministic, so
drift here means behavior changed somewhere upstream.
"""

import pytest

from psdolab.config import HypothesisViolation, load_config
from psdolab.experiments import (VERIFY_TARGETS, run_bmo,
                                 run_boundedness_experiment,
                                 run_commutator_experiment, run_fs,
                                 run_kernel_decay, run_local_average_check,
                                 run_maximal, run_oscillation_check,
                                 run_weight_calculus)


@pytest.fixture(scope="module")
def cfg():
    return load_config()


def test_target_table_is_complete():
    assert sorted(VERIFY_TARGETS) == [
        "bmo", "fs", "kernel-decay", "lemma41", "lemma42",
        "maximal", "theorem13a", "theorem13b", "weights",
    ]


def test_kernel_decay_run(cfg):
    rep = run_kernel_decay(cfg)
    assert rep.verdict == "pass"
    assert rep.aggregate["fits"] == 7
    residual = [it for it in rep.items if it["id"] == "partition_residual"]
    assert residual and residual[0]["value"] == 0.0


def test_weight_calculus_run(cfg):
    rep = run_weight_calculus(cfg)
    assert rep.verdict == "pass"
    units = [it for it in rep.items if it["id"] == "unit_characteristic"]
    assert units and abs(units[0]["value"] - 1.0) <= 1e-10


def test_bmo_run(cfg):
    rep = run_bmo(cfg)
    assert rep.verdict == "pass"
    assert rep.aggregate["norm"] == pytest.approx(0.4453108078839073, rel=1e-9)


def test_maximal_run(cfg):
    rep = run_maximal(cfg)
    assert rep.verdict == "pass"
    assert rep.aggregate["cover_size"] == 78
    wb = [it for it in rep.items if it["id"] == "weighted_bounds"][0]["value"]
    assert wb["cover_trend"] == pytest.approx(-0.0931208983023363, rel=1e-9)


def test_fs_run(cfg):
    rep = run_fs(cfg)
    assert rep.verdict == "pass"
    assert rep.aggregate["max"] == pytest.approx(0.38197813985474216, rel=1e-9)
    assert rep.aggregate["median"] == pytest.approx(0.2574378994306422, rel=1e-9)


def test_boundedness_run(cfg):
    rep = run_boundedness_experiment(cfg)
    assert rep.verdict == "pass"
    agg = rep.aggregate
    assert agg["max"] == pytest.approx(0.9620102630695693, rel=1e-9)
    assert agg["median"] == pytest.approx(0.8186963842037172, rel=1e-9)
    assert abs(agg["slope"]) <= 0.1
    assert agg["class_membership"] is True
    assert agg["weight_stable"] is True
    assert agg["unweighted_drift"] is False
    assert agg["zero_family"] is False


def test_commutator_run(cfg):
    rep = run_commutator_experiment(cfg)
    assert rep.verdict == "pass"
    agg = rep.aggregate
    assert agg["max"] == pytest.approx(0.27709637575397683, rel=1e-9)
    assert agg["median"] == pytest.approx(0.22811927741596227, rel=1e-9)
    assert abs(agg["slope"]) <= 0.1


def test_commutator_constant_multiplier_is_zero_family(cfg):
    rep = run_commutator_experiment(
        load_config(None, {"bmo.preset": "constant"}))
    assert rep.verdict == "pass"
    assert rep.aggregate["zero_family"] is True
    assert rep.aggregate["max"] <= 1e-12


def test_local_average_run(cfg):
    rep = run_local_average_check(cfg)
    assert rep.verdict == "pass"
    agg = rep.aggregate
    assert agg["plain_max"] == pytest.approx(1.6437150294122103, rel=1e-9)
    assert agg["plain_median"] == pytest.approx(1.0845185151493513, rel=1e-9)
    assert agg["commutator_max"] == pytest.approx(0.5837146479611758, rel=1e-9)
    assert agg["plain_max"] <= 4.0 * agg["plain_median"]
    assert agg["commutator_max"] <= 4.0 * agg["commutator_median"]


def test_oscillation_run(cfg):
    rep = run_oscillation_check(cfg)
    assert rep.verdict == "pass"
    agg = rep.aggregate
    assert agg["zero_case_max"] == 0.0
    assert agg["plain_max"] == pytest.approx(0.052315119349406226, rel=1e-9)
    assert agg["commutator_max"] == pytest.approx(0.007453242303103464, rel=1e-9)


def test_oscillation_rejects_oversized_radii(cfg):
    bad = load_config(None, {"oscillation.radii": "0.5,4.0"})
    with pytest.raises(HypothesisViolation):
        run_oscillation_check(bad)


def test_gate_failure_reported_not_hidden():
    # (1+|x|)^2 fails to stabilize at theta=0; the runner must label the
    # result instead of claiming a pass or a fail
    cfg = load_config(None, {"weight.gamma": "2.0", "weight.theta": "0.0"})
    rep = run_boundedness_experiment(cfg)
    assert rep.verdict == "hypothesis_unverified"
    assert rep.aggregate["weight_stable"] is False


def test_runs_are_deterministic(cfg):
    a = run_weight_calculus(cfg)
    b = run_weight_calculus(cfg)
    assert a.to_json_dict() == b.to_json_dict()
