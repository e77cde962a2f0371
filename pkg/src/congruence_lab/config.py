"""Experiment configuration: defaults, JSON config files, and overrides.

A config is a JSON object; every key can also be set on the command line
with --set section.key=value.  Budgets are positive caps on enumeration
and memory; grids and rules are per-suite parameter blocks.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import ConfigError

__all__ = ["ExperimentConfig", "DEFAULT_CONFIG", "SUITE_NAMES", "load_config"]

SUITE_NAMES = (
    "coverage",
    "collisions",
    "counterexample",
    "charsum",
    "moments",
    "parseval",
    "largevalues",
    "primecong",
    "theta",
)

DEFAULT_CONFIG: dict[str, Any] = {
    "seed": 1,
    "out_dir": "reports",
    "workers": 1,
    "json_mirror": True,
    "budgets": {
        "sieve.max_n": 100_000_000,
        "coverage.max_work": 1_000_000_000,
        "collisions.max_triples": 1_000_000_000,
        "moments.max_tuples": 10_000_000,
        "primecong.max_pairs": 200_000_000,
    },
    "coverage": {
        "m_grid": [55, 101, 1009],
        "epsilon": 0.2,
        "k": 3,
        "bounds": None,
    },
    "collisions": {
        "cases": [[7, 2, 2, 2], [7, 5, 5, 5], [55, 5, 5, 5]],
    },
    "counterexample": {
        "cases": [[11, 5, 3], [101, 20, 12]],
    },
    "charsum": {
        "burgess": {"m_grid": [101, 1009], "n_grid": [10, 50, 100]},
        "vinogradov": {"p_grid": [1009], "n_grid": [50, 100, 500], "k": 1},
    },
    "moments": {
        "m_grid": [7, 101],
        "n_values": [2],
        "u_rule": "floor_root",
    },
    "parseval": {
        "m_grid": [12, 101],
        "sets_per_m": 3,
        "set_size": 8,
        "value_max": 1000,
    },
    "largevalues": {
        "p_grid": [101, 1009],
        "prime_limit": 50,
        "v_grid": [1, 2, 5, 10, 20],
    },
    "primecong": {
        "p_grid": [101, 211],
        "n_rule": 0.9,
        "k": 1,
        "lambda_rule": "random",
        "lambdas_per_p": 3,
        "epsilon": 0.01,
    },
    "theta": {
        "pairs": [["1/4", "2/3"]],
    },
}


def _deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _parse_override(text: str) -> tuple[list[str], Any]:
    if "=" not in text:
        raise ConfigError(f"override {text!r} is not of the form key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    if not key:
        raise ConfigError(f"override {text!r} has an empty key")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    if key.startswith("budgets."):
        return ["budgets", key[len("budgets.") :]], value
    if "." in key:
        section, rest = key.split(".", 1)
        return [section, rest], value
    return [key], value


@dataclass
class ExperimentConfig:
    """Fully resolved experiment configuration (defaults + file + overrides)."""

    data: dict[str, Any] = field(default_factory=lambda: copy.deepcopy(DEFAULT_CONFIG))

    @property
    def seed(self) -> int:
        return self.data["seed"]

    @property
    def out_dir(self) -> str:
        return self.data["out_dir"]

    @property
    def workers(self) -> int:
        return self.data["workers"]

    @property
    def json_mirror(self) -> bool:
        return self.data["json_mirror"]

    def budget(self, key: str) -> int:
        return self.data["budgets"][key]

    def suite(self, name: str) -> dict[str, Any]:
        return self.data[name]

    def echo(self) -> dict[str, Any]:
        return copy.deepcopy(self.data)

    def validate(self) -> None:
        d = self.data
        for key in ("seed", "workers"):
            if not isinstance(d.get(key), int) or isinstance(d.get(key), bool):
                raise ConfigError(f"{key} must be an integer, got {d.get(key)!r}")
        if d["workers"] < 1:
            raise ConfigError(f"workers must be >= 1, got {d['workers']}")
        if not isinstance(d.get("out_dir"), str) or not d["out_dir"]:
            raise ConfigError("out_dir must be a non-empty string")
        if not isinstance(d.get("json_mirror"), bool):
            raise ConfigError("json_mirror must be a boolean")
        budgets = d.get("budgets")
        if not isinstance(budgets, dict):
            raise ConfigError("budgets must be an object")
        for key, value in budgets.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"budget {key} must be a positive integer, got {value!r}")
        known = set(SUITE_NAMES) | {"seed", "out_dir", "workers", "json_mirror", "budgets"}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for name in SUITE_NAMES:
            if not isinstance(d.get(name), dict):
                raise ConfigError(f"suite section {name!r} must be an object")
        cov = d["coverage"]
        if cov.get("k") not in (3, 4):
            raise ConfigError(f"coverage.k must be 3 or 4, got {cov.get('k')!r}")
        if not isinstance(cov.get("m_grid"), list):
            raise ConfigError("coverage.m_grid must be a list")
        for grid_key, sect in (("m_grid", "moments"), ("m_grid", "parseval"),
                               ("p_grid", "largevalues"), ("p_grid", "primecong")):
            if not isinstance(d[sect].get(grid_key), list):
                raise ConfigError(f"{sect}.{grid_key} must be a list")


def load_config(path: str | None, overrides: list[str] | None = None) -> ExperimentConfig:
    """Defaults, deep-merged with the JSON file at `path`, then --set overrides."""
    data = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file {path} must contain a JSON object")
        data = _deep_merge(data, loaded)
    for text in overrides or []:
        keys, value = _parse_override(text)
        node = data
        for key in keys[:-1]:
            if not isinstance(node.get(key), dict):
                node[key] = {}
            node = node[key]
        node[keys[-1]] = value
    cfg = ExperimentConfig(data)
    cfg.validate()
    return cfg
