"""Experiment configuration.

Config files are flat key=value text: one assignment per line, '#' starts
a comment, section membership is spelled in the key itself (grid.n=2048).
Unknown keys are rejected so typos fail loudly.  CLI flags override file
values, file values override defaults, and the resolved mapping is what
gets hashed into every report.
"""

from __future__ import annotations

from dataclasses import dataclass

from .report import config_hash

__all__ = [
    "HypothesisViolation",
    "ExperimentConfig",
    "DEFAULTS",
    "parse_config_text",
    "load_config",
]


class HypothesisViolation(ValueError):
    """A parameter combination breaks a hypothesis the experiment declares.

    The message names the violated condition so an aborted run says what
    to fix.  Runs flagged run.counterexample=true skip the gate and carry
    the flag into their reports instead.
    """


DEFAULTS: dict[str, str] = {
    "grid.dim": "1",
    "grid.n": "1024",
    "grid.l": "16.0",
    "symbol.preset": "bessel_order_m",
    "symbol.m": "-0.75",
    "symbol.rho": "1.0",
    "symbol.delta": "0.0",
    "symbol.spatial_scale": "16.0",
    "operator.mode": "auto",
    "weight.preset": "power_growth",
    "weight.gamma": "1.5",
    "weight.p": "2.0",
    "weight.theta": "1.5",
    "bmo.preset": "linear",
    "bmo.theta": "1.0",
    "corpus.center_count": "6",
    "corpus.widths": "0.6,1.0,1.8",
    "corpus.modulations": "0,4,12",
    "corpus.noise_count": "10",
    "maximal.s": "1.5",
    "maximal.kappa": "1.0",
    "maximal.n_big": "8",
    "fs.count": "30",
    "lemma.n_big": "3",
    "lemma.center_count": "4",
    "lemma.widths": "0.7,1.5",
    "lemma.modulations": "0,8",
    "oscillation.radii": "0.5,1.0,2.0",
    "oscillation.centers": "0.0,3.0",
    "kernel.ell_max": "2",
    "kernel.k_lo": "2",
    "kernel.k_hi": "5",
    "kernel.diff_ball_radius": "0.5",
    "kernel.diff_j": "2,4",
    "kernel.diff_k": "2,5",
    "kernel.adjoint_n_exp": "2",
    "tolerances.ratio_spread": "4.0",
    "tolerances.trend_slope": "0.1",
    "tolerances.slope": "0.15",
    "run.seed": "7",
    "run.out": "out",
    "run.counterexample": "false",
}

_SYMBOL_PARAM_KEYS = {
    "identity": (),
    "bessel_order_m": ("m",),
    "rough_x_modulated": ("m",),
    "oscillating_amplitude": ("m", "rho", "delta", "spatial_scale"),
}


def parse_config_text(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def _as_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved configuration: defaults, then file, then explicit overrides."""

    entries: tuple[tuple[str, str], ...]

    # -- raw access ---------------------------------------------------------

    def get(self, key: str) -> str:
        for k, v in self.entries:
            if k == key:
                return v
        raise KeyError(key)

    def get_float(self, key: str) -> float:
        return float(self.get(key))

    def get_int(self, key: str) -> int:
        return int(self.get(key))

    def get_bool(self, key: str) -> bool:
        return _as_bool(self.get(key))

    def get_floats(self, key: str) -> tuple[float, ...]:
        return tuple(float(t) for t in self.get(key).split(",") if t.strip())

    def get_ints(self, key: str) -> tuple[int, ...]:
        return tuple(int(t) for t in self.get(key).split(",") if t.strip())

    def digest(self) -> str:
        # run.out points at the report directory; it does not influence any
        # computed value, and hashing it would make otherwise identical runs
        # look distinct.
        return config_hash({k: v for k, v in self.entries if k != "run.out"})

    @property
    def seed(self) -> int:
        return self.get_int("run.seed")

    @property
    def out_dir(self) -> str:
        return self.get("run.out")

    @property
    def counterexample(self) -> bool:
        return self.get_bool("run.counterexample")

    # -- object builders ----------------------------------------------------

    def make_grid(self):
        from .grid import make_grid

        return make_grid(self.get_int("grid.dim"), self.get_int("grid.n"), self.get_float("grid.l"))

    def symbol_params(self) -> dict:
        name = self.get("symbol.preset")
        if name not in _SYMBOL_PARAM_KEYS:
            raise ValueError(f"unknown symbol preset {name!r}")
        return {k: self.get_float(f"symbol.{k}") for k in _SYMBOL_PARAM_KEYS[name]}

    def make_symbol(self):
        from .symbols import preset_symbol

        return preset_symbol(self.get("symbol.preset"), **self.symbol_params())

    def make_operator(self, symbol, grid, family=None):
        from .operators import make_operator

        mode = self.get("operator.mode")
        if mode == "auto":
            mode = "full"
        return make_operator(symbol, grid, mode=mode, family=family)

    def make_weight(self, grid):
        from .function_classes import preset_weight

        name = self.get("weight.preset")
        params = {}
        if name == "power_growth":
            params["gamma"] = self.get_float("weight.gamma")
        if name == "random_log_bounded":
            params["seed"] = self.seed
        return preset_weight(name, grid, **params)

    def make_bmo(self, grid):
        from .function_classes import preset_bmo

        return preset_bmo(self.get("bmo.preset"), grid)

    def make_corpus(self, grid):
        from .corpus import gaussian_corpus

        return gaussian_corpus(
            grid,
            widths=self.get_floats("corpus.widths"),
            modulations=self.get_ints("corpus.modulations"),
            center_count=self.get_int("corpus.center_count"),
        )

    # -- hypothesis gate ----------------------------------------------------

    def check_hypotheses(self) -> None:
        """Reject parameter combinations outside the verified regime.

        Symbol classes must satisfy m < dim*(rho-1), except the order-zero
        rho=1 family which is admitted outright.  The weight exponent must
        exceed 1 and both growth exponents must be nonnegative.  Runs
        flagged as counterexamples bypass the gate.
        """
        if self.counterexample:
            return
        dim = self.get_int("grid.dim")
        name = self.get("symbol.preset")
        if name == "identity":
            m, rho = 0.0, 1.0
        else:
            m = self.get_float("symbol.m")
            rho = self.get_float("symbol.rho") if name == "oscillating_amplitude" else 1.0
        order_zero_family = m == 0.0 and rho == 1.0
        if not (m < dim * (rho - 1.0) or order_zero_family):
            raise HypothesisViolation(
                f"symbol order m={m:g} must satisfy m < dim*(rho-1) = {dim * (rho - 1.0):g}"
                " (or be the order-zero rho=1 family)"
            )
        p = self.get_float("weight.p")
        if not p > 1.0:
            raise HypothesisViolation(f"weight exponent p={p:g} must exceed 1")
        if self.get_float("weight.theta") < 0.0:
            raise HypothesisViolation("weight growth exponent theta must be nonnegative")
        if self.get_float("bmo.theta") < 0.0:
            raise HypothesisViolation("oscillation growth exponent theta must be nonnegative")
        s = self.get_float("maximal.s")
        if not p > s > 1.0:
            raise HypothesisViolation(
                f"maximal bound needs p > s > 1, got p={p:g}, s={s:g}"
            )


def load_config(path=None, overrides: dict | None = None) -> ExperimentConfig:
    """Resolve a config: DEFAULTS, then the file at path, then overrides."""
    resolved = dict(DEFAULTS)
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            file_entries = parse_config_text(fh.read())
        unknown = sorted(set(file_entries) - set(DEFAULTS))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        resolved.update(file_entries)
    if overrides:
        unknown = sorted(set(overrides) - set(DEFAULTS))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        resolved.update({k: str(v) for k, v in overrides.items()})
    return ExperimentConfig(entries=tuple(sorted(resolved.items())))
