"""Run configuration: JSON file -> typed parameter objects.

The shipped defaults are the reference scenario (x0=100, mu=5,
alpha=10, lam=1, a=50, Q=50, C_h=1 <= C_o=5 <= C_so=10), so every
command runs meaningfully with no config at all.  CLI flags override
individual fields.
"""

import copy
import json
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .forecast import ExperimentConfig
from .params import CostParams, OrderingMode, PolicyParams, ProcessParams
from .renewal import RenewalSeriesConfig

DEFAULT_CONFIG = {
    "process": {"mu": 5.0, "alpha": 10.0, "lam": 1.0},
    "policy": {"x0": 100.0, "a": 50.0, "Q": 50.0},
    "costs": {
        "c_o": 5.0,
        "c_h": 1.0,
        "c_so": 10.0,
        "ordering_mode": "per_unit_times_Q",
    },
    "grid": {"t_start": 0.0, "t_end": 12.0, "steps": 121},
    "series": {"tail_tol": 1e-12, "n_max": 10000},
    "mc": {"n_paths": 100000, "base_seed": 20240},
    "validate": {"times": [2.0, 5.0, 10.0]},
    "fpt": {"n_values": 5, "t_end": 12.0, "steps": 61},
    "sweep": {"a_list": [40.0, 50.0, 60.0], "Q_list": [50.0, 60.0], "c_o_list": [5.0, 10.0]},
    "experiment": {
        "n_series": 1000,
        "window": 12,
        "sim_start": 13,
        "sim_end": 50,
        "period_length": 1.0,
        "base_seed": 7000000,
        "ordering_mode": "per_order",
        "trigger": "on_hand",
        "forecaster": "arima",
        "p_max": 2,
        "q_max": 2,
        "d_set": [0, 1],
    },
}


def _merge(base, override):
    out = copy.deepcopy(base)
    for key, value in override.items():
        if key in out and isinstance(out[key], dict) and isinstance(value, dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


@dataclass(frozen=True)
class RunConfig:
    raw: dict
    process: ProcessParams
    policy: PolicyParams
    costs: CostParams
    grid: np.ndarray
    series: RenewalSeriesConfig
    n_paths: int
    base_seed: int
    validate_times: tuple
    experiment: ExperimentConfig


def _build_grid(spec) -> np.ndarray:
    t_start = float(spec["t_start"])
    t_end = float(spec["t_end"])
    steps = int(spec["steps"])
    if steps < 1:
        raise ParameterError(f"grid needs at least one step, got {steps}")
    if t_start < 0 or t_end < t_start:
        raise ParameterError(f"grid must satisfy 0 <= t_start <= t_end, got [{t_start}, {t_end}]")
    if steps == 1 or t_end == t_start:
        return np.array([t_start])
    return np.linspace(t_start, t_end, steps)


def build_config(raw: dict) -> RunConfig:
    process = ProcessParams(**raw["process"])
    policy = PolicyParams(**raw["policy"])
    costs_raw = dict(raw["costs"])
    costs = CostParams(
        c_o=costs_raw["c_o"],
        c_h=costs_raw["c_h"],
        c_so=costs_raw["c_so"],
        ordering_mode=OrderingMode(costs_raw["ordering_mode"]),
    )
    exp_raw = dict(raw["experiment"])
    exp_costs = CostParams(
        c_o=costs.c_o,
        c_h=costs.c_h,
        c_so=costs.c_so,
        ordering_mode=OrderingMode(exp_raw.pop("ordering_mode")),
    )
    experiment = ExperimentConfig(
        process=process,
        policy=policy,
        costs=exp_costs,
        n_series=int(exp_raw["n_series"]),
        window=int(exp_raw["window"]),
        sim_start=int(exp_raw["sim_start"]),
        sim_end=int(exp_raw["sim_end"]),
        period_length=float(exp_raw["period_length"]),
        base_seed=int(exp_raw["base_seed"]),
        p_max=int(exp_raw["p_max"]),
        q_max=int(exp_raw["q_max"]),
        d_set=tuple(exp_raw["d_set"]),
        trigger=exp_raw["trigger"],
        forecaster=exp_raw["forecaster"],
    )
    return RunConfig(
        raw=raw,
        process=process,
        policy=policy,
        costs=costs,
        grid=_build_grid(raw["grid"]),
        series=RenewalSeriesConfig(
            tail_tol=float(raw["series"]["tail_tol"]), n_max=int(raw["series"]["n_max"])
        ),
        n_paths=int(raw["mc"]["n_paths"]),
        base_seed=int(raw["mc"]["base_seed"]),
        validate_times=tuple(float(t) for t in raw["validate"]["times"]),
        experiment=experiment,
    )


def load_config(path=None, overrides=None) -> RunConfig:
    """Merge defaults <- config file <- CLI overrides, then build."""
    raw = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        with open(path) as fh:
            raw = _merge(raw, json.load(fh))
    if overrides:
        raw = _merge(raw, overrides)
    return build_config(raw)
