"""Run configuration: a single YAML (or JSON) mapping describing the scene
(group, grid, potential), the suite list, sweep axes, and output settings."""

import json
from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ConfigError

GROUP_KINDS = ("z2_product", "dihedral")
POTENTIAL_PRESETS = ("zero", "constant", "soft_coulomb", "inverse_power", "bump")

DEFAULT_GROUP = {"kind": "z2_product", "multiplicities": [0.5]}
DEFAULT_GRID = {"R": 10.0, "N": 128}
DEFAULT_POTENTIAL = {"preset": "soft_coulomb", "params": {"a": 1.0}}
DEFAULT_SWEEPS = {
    "t_list": [0.1, 0.5, 1.0],
    "p_list": [1, 2],
    "q_list": [2, "inf"],
    "kappa_list": [0.0, 0.5, 1.5],
}


@dataclass(frozen=True)
class RunConfig:
    group: dict
    grid: dict
    potential: dict
    suites: tuple
    sweeps: dict
    out_dir: str
    seed: int


def _require(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def _validate_group(g: dict):
    _require(isinstance(g, dict), "group section must be a mapping")
    kind = g.get("kind", "z2_product")
    _require(kind in GROUP_KINDS, f"unknown group kind {kind!r}")
    if kind == "z2_product":
        mult = g.get("multiplicities", [0.5])
        _require(
            isinstance(mult, list) and len(mult) >= 1,
            "multiplicities must be a nonempty list",
        )
        for m in mult:
            _require(
                isinstance(m, (int, float)) and m >= 0,
                "multiplicities must be nonnegative numbers",
            )
        return {"kind": kind, "multiplicities": [float(m) for m in mult]}
    m = g.get("m", 3)
    _require(isinstance(m, int) and m >= 2, "dihedral order parameter m must be >= 2")
    k_even = float(g.get("k_even", 0.5))
    k_odd = g.get("k_odd", None)
    _require(k_even >= 0, "multiplicities must be nonnegative")
    if k_odd is not None:
        _require(float(k_odd) >= 0, "multiplicities must be nonnegative")
        k_odd = float(k_odd)
    return {"kind": kind, "m": m, "k_even": k_even, "k_odd": k_odd}


def _validate_grid(g: dict):
    _require(isinstance(g, dict), "grid section must be a mapping")
    R = g.get("R", DEFAULT_GRID["R"])
    N = g.get("N", DEFAULT_GRID["N"])
    _require(isinstance(R, (int, float)) and R > 0, "grid R must be positive")
    _require(isinstance(N, int) and N > 0, "grid N must be a positive integer")
    _require(N % 2 == 0, "grid N must be even")
    return {"R": float(R), "N": N}


def _validate_potential(p: dict):
    _require(isinstance(p, dict), "potential section must be a mapping")
    if "csv" in p:
        return {"csv": str(p["csv"])}
    preset = p.get("preset", "zero")
    _require(preset in POTENTIAL_PRESETS, f"unknown potential preset {preset!r}")
    params = p.get("params", {})
    _require(isinstance(params, dict), "potential params must be a mapping")
    if preset == "inverse_power":
        _require("beta" in params, "inverse_power requires a beta parameter")
    return {"preset": preset, "params": {k: float(v) for k, v in params.items()}}


def load_config(path, known_suites=None) -> RunConfig:
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    text = p.read_text()
    try:
        if p.suffix == ".json":
            data = json.loads(text)
        else:
            data = yaml.safe_load(text)
    except Exception as exc:
        raise ConfigError(f"config is not parseable: {exc}") from exc
    _require(isinstance(data, dict), "config root must be a mapping")
    group = _validate_group(data.get("group", dict(DEFAULT_GROUP)))
    grid = _validate_grid(data.get("grid", dict(DEFAULT_GRID)))
    potential = _validate_potential(data.get("potential", dict(DEFAULT_POTENTIAL)))
    suites = data.get("suites", [])
    _require(
        isinstance(suites, list) and all(isinstance(s, str) for s in suites),
        "suites must be a list of suite names",
    )
    if known_suites is not None:
        for s in suites:
            _require(s in known_suites, f"unknown suite {s!r}")
        if not suites:
            suites = sorted(known_suites)  # omitted list means the full set
    sweeps = dict(DEFAULT_SWEEPS)
    user_sweeps = data.get("sweeps", {})
    _require(isinstance(user_sweeps, dict), "sweeps must be a mapping")
    sweeps.update(user_sweeps)
    for key in ("t_list", "kappa_list"):
        _require(
            all(isinstance(v, (int, float)) for v in sweeps[key]),
            f"{key} entries must be numbers",
        )
    out_dir = str(data.get("out_dir", "runs/latest"))
    seed = data.get("seed", 0)
    _require(isinstance(seed, int) and seed >= 0, "seed must be a nonnegative integer")
    return RunConfig(group, grid, potential, tuple(suites), sweeps, out_dir, seed)
