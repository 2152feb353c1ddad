import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psdolab.config import (DEFAULTS, ExperimentConfig, HypothesisViolation,
                            load_config, parse_config_text)


def test_defaults_load_and_expose_types(tmp_path):
    cfg = load_config()
    assert cfg.get("symbol.preset") == "bessel_order_m"
    assert cfg.get_float("weight.p") == 2.0
    assert cfg.get_int("grid.n") == 1024
    assert cfg.get_floats("corpus.widths") == (0.6, 1.0, 1.8)
    assert cfg.get_ints("corpus.modulations") == (0, 4, 12)
    assert cfg.get_bool("run.counterexample") is False


def test_parse_ignores_comments_and_blanks():
    entries = parse_config_text("# header\n\nweight.p = 3.5\n  # trailing\n")
    assert entries == {"weight.p": "3.5"}


def test_unknown_key_rejected(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("weight.q = 2\n")
    with pytest.raises(ValueError):
        load_config(str(p))


def test_file_and_override_precedence(tmp_path):
    p = tmp_path / "a.cfg"
    p.write_text("weight.p = 3.0\nsymbol.m = -0.5\n")
    cfg = load_config(str(p), {"weight.p": "4.0"})
    assert cfg.get_float("weight.p") == 4.0      # override beats file
    assert cfg.get_float("symbol.m") == -0.5     # file beats default
    assert cfg.get_int("grid.n") == 1024         # default survives


def test_digest_ignores_output_location():
    a = load_config(None, {"run.out": "x"})
    b = load_config(None, {"run.out": "y"})
    c = load_config(None, {"run.seed": "8"})
    assert a.digest() == b.digest()
    assert a.digest() != c.digest()


def test_hypothesis_gate_rejects_bad_order():
    cfg = load_config(None, {"symbol.m": "0.5"})
    with pytest.raises(HypothesisViolation):
        cfg.check_hypotheses()


@pytest.mark.parametrize("key,value", [
    ("weight.p", "1.0"),
    ("weight.theta", "-0.5"),
    ("maximal.s", "2.5"),
    ("bmo.theta", "-1.0"),
])
def test_hypothesis_gate_rejects_bad_exponents(key, value):
    cfg = load_config(None, {key: value})
    with pytest.raises(HypothesisViolation):
        cfg.check_hypotheses()


def test_counterexample_flag_bypasses_gate():
    cfg = load_config(None, {"symbol.m": "0.5", "run.counterexample": "true"})
    cfg.check_hypotheses()


def test_builders_come_from_entries():
    cfg = load_config()
    g = cfg.make_grid()
    assert g.n == 1024 and g.half_length == 16.0
    sym = cfg.make_symbol()
    assert sym.order == -0.75
    w = cfg.make_weight(g)
    assert w.label == "power_growth(gamma=1.5)"
    b = cfg.make_bmo(g)
    assert b.values.shape == g.shape


@settings(max_examples=25, deadline=None)
@given(st.floats(1.25, 8.0), st.floats(0.0, 4.0))
def test_gate_accepts_legitimate_exponents(p, theta):
    cfg = load_config(None, {"weight.p": repr(p), "weight.theta": repr(theta),
                             "maximal.s": repr(min(1.0 + (p - 1.0) / 2.0, 1.5))})
    cfg.check_hypotheses()
