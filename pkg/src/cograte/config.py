"""Run configuration: JSON document + preset + flag overrides, flags win.

The document is flat JSON; unknown fields are rejected so typos fail loudly.
Topology is given either as line spacings (t_d, r_d, optional d_24) or as
four explicit coordinates. Power points come from start/stop/step (stop
inclusive) or an explicit P_dB list.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .analysis import DEFAULT_T_GRID, SCHEME_SCENARIO, SCHEMES
from .channel import SCENARIOS, LinearTopology, SystemParams
from .errors import ConfigError

__all__ = ["RunConfig", "PRESETS", "build_config", "load_config_file", "parse_pdb"]

PRESETS: dict[str, dict] = {
    # single-antenna sweep over fixed path-loss gains
    "fig2": {
        "scenario": "siso_siso",
        "schemes": ["classical", "df_dpc", "f_dpc_nc"],
        "params": {"p": 0.1, "beta": 1.0, "M": 1},
        "topology": {"t_d": 0.1, "r_d": 0.6, "d_24": 1.0},
        "sweep": {"start": -20.0, "stop": 100.0, "step": 5.0},
        "trials": 0,
        "seed": 12345,
    },
    # two-antenna fading sweep
    "fig3": {
        "scenario": "miso_miso",
        "schemes": ["classical", "d_dpc_zf", "d_dpc_zf_nc", "zf_miso"],
        "params": {"p": 0.1, "beta": 1.0, "M": 2},
        "topology": {"t_d": 0.1, "r_d": 0.6, "d_24": 1.0},
        "sweep": {"start": -20.0, "stop": 100.0, "step": 5.0},
        "trials": 500,
        "seed": 12345,
    },
}

_KNOWN_FIELDS = {
    "scenario", "schemes", "params", "topology", "sweep",
    "trials", "seed", "t_grid_size", "out", "format", "workers",
}
_KNOWN_PARAMS = {"p", "beta", "M", "pathloss_exponent"}
_SPACING_FIELDS = {"t_d", "r_d", "d_24"}
_COORD_FIELDS = {"pos_tx1", "pos_tx2", "pos_rx2", "pos_rx1"}


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    schemes: tuple[str, ...]
    params: SystemParams
    topology: LinearTopology
    p_db: tuple[float, ...]
    trials: int = 0
    seed: int = 0
    t_grid_size: int = DEFAULT_T_GRID
    out: str | None = None
    fmt: str = "csv"
    workers: int = 1


def parse_pdb(text: str) -> list[float]:
    """'x' -> [x]; 'a:b' -> [a, b]; 'a:b:s' -> a, a+s, ... up to b inclusive."""
    parts = text.split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise ConfigError("pdb", f"not a number or start:stop:step range: {text!r}")
    if len(nums) == 1:
        return nums
    if len(nums) == 2:
        return nums
    if len(nums) == 3:
        start, stop, step = nums
        if step <= 0.0:
            raise ConfigError("pdb", "step must be positive")
        if stop < start:
            raise ConfigError("pdb", "stop must not be below start")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    raise ConfigError("pdb", f"expected at most start:stop:step, got {text!r}")


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}")
    if not isinstance(doc, dict):
        raise ConfigError("config", "top-level JSON value must be an object")
    return doc


def _merge(base: dict, overlay: dict) -> dict:
    out = dict(base)
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _require_number(doc: dict, section: str, key: str, default=None):
    if key not in doc:
        if default is None:
            raise ConfigError(f"{section}.{key}" if section else key, "missing required field")
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key}" if section else key, f"must be a number, got {value!r}")
    return value


def _build_topology(doc: dict) -> LinearTopology:
    keys = set(doc)
    unknown = keys - _SPACING_FIELDS - _COORD_FIELDS
    if unknown:
        raise ConfigError("topology", f"unknown fields {sorted(unknown)}")
    has_spacing = keys & _SPACING_FIELDS
    has_coords = keys & _COORD_FIELDS
    if has_spacing and has_coords:
        raise ConfigError("topology", "give either spacings (t_d, r_d, d_24) or coordinates, not both")
    try:
        if has_coords:
            if has_coords != _COORD_FIELDS:
                raise ConfigError(
                    "topology", f"coordinate form needs all of {sorted(_COORD_FIELDS)}"
                )
            return LinearTopology(
                pos_tx1=float(_require_number(doc, "topology", "pos_tx1")),
                pos_tx2=float(_require_number(doc, "topology", "pos_tx2")),
                pos_rx2=float(_require_number(doc, "topology", "pos_rx2")),
                pos_rx1=float(_require_number(doc, "topology", "pos_rx1")),
            )
        return LinearTopology.from_spacings(
            t_d=float(_require_number(doc, "topology", "t_d")),
            r_d=float(_require_number(doc, "topology", "r_d")),
            d_24=float(_require_number(doc, "topology", "d_24", default=1.0)),
        )
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError("topology", str(exc))


def _build_pdb(doc: dict | list) -> list[float]:
    if isinstance(doc, list):
        doc = {"P_dB": doc}
    if not isinstance(doc, dict):
        raise ConfigError("sweep", "must be an object or a list of P_dB values")
    if "P_dB" in doc:
        values = doc["P_dB"]
        if not isinstance(values, list) or not values:
            raise ConfigError("sweep.P_dB", "must be a nonempty list")
        out = []
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError("sweep.P_dB", f"must contain numbers, got {v!r}")
            out.append(float(v))
        return out
    start = float(_require_number(doc, "sweep", "start"))
    stop = float(_require_number(doc, "sweep", "stop"))
    step = float(_require_number(doc, "sweep", "step"))
    return parse_pdb(f"{start!r}:{stop!r}:{step!r}")


def _infer_scenario(scenario: str, schemes: tuple[str, ...]) -> str:
    needs = {SCHEME_SCENARIO[s] for s in schemes} - {None}
    if len(needs) > 1:
        raise ConfigError("schemes", f"schemes mix incompatible scenarios: {sorted(needs)}")
    if needs:
        return needs.pop()
    return scenario


def build_config(
    preset: str | None = None,
    file_doc: dict | None = None,
    overrides: dict | None = None,
) -> RunConfig:
    """Assemble and validate a RunConfig (defaults < preset < file < flags)."""
    doc: dict = {}
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError("preset", f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        doc = _merge(doc, PRESETS[preset])
    if file_doc:
        doc = _merge(doc, file_doc)
    if overrides:
        doc = _merge(doc, {k: v for k, v in overrides.items() if v is not None})

    unknown = set(doc) - _KNOWN_FIELDS
    if unknown:
        raise ConfigError("config", f"unknown fields {sorted(unknown)}")

    scenario = doc.get("scenario")
    if scenario not in SCENARIOS:
        raise ConfigError("scenario", f"must be one of {list(SCENARIOS)}, got {scenario!r}")

    schemes = doc.get("schemes")
    if isinstance(schemes, str):
        schemes = [s.strip() for s in schemes.split(",") if s.strip()]
    if not isinstance(schemes, list) or not schemes:
        raise ConfigError("schemes", "must be a nonempty list of scheme names")
    for s in schemes:
        if s not in SCHEMES:
            raise ConfigError("schemes", f"unknown scheme {s!r}; choose from {list(SCHEMES)}")
    schemes = tuple(dict.fromkeys(schemes))
    scenario = _infer_scenario(scenario, schemes)

    pdoc = doc.get("params", {})
    if not isinstance(pdoc, dict):
        raise ConfigError("params", "must be an object")
    unknown = set(pdoc) - _KNOWN_PARAMS
    if unknown:
        raise ConfigError("params", f"unknown fields {sorted(unknown)}")
    m = pdoc.get("M", 1)
    if isinstance(m, bool) or not isinstance(m, int):
        raise ConfigError("params.M", f"must be an integer, got {m!r}")
    try:
        # P is a placeholder; sweeps substitute one value per power point
        params = SystemParams(
            p=float(_require_number(pdoc, "params", "p")),
            beta=float(_require_number(pdoc, "params", "beta")),
            P=1.0,
            M=m,
            pathloss_exponent=float(_require_number(pdoc, "params", "pathloss_exponent", default=2.0)),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("params", str(exc))

    if "topology" not in doc:
        raise ConfigError("topology", "missing required field")
    topology = _build_topology(doc["topology"])

    if "sweep" not in doc:
        raise ConfigError("sweep", "missing required field")
    p_db = _build_pdb(doc["sweep"])
    for v in p_db:
        if not math.isfinite(v):
            raise ConfigError("sweep", "P_dB values must be finite")

    trials = doc.get("trials", 0)
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 0:
        raise ConfigError("trials", f"must be a nonnegative integer, got {trials!r}")
    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise ConfigError("seed", f"must be an unsigned 64-bit integer, got {seed!r}")
    grid = doc.get("t_grid_size", DEFAULT_T_GRID)
    if isinstance(grid, bool) or not isinstance(grid, int) or grid < 3:
        raise ConfigError("t_grid_size", f"must be an integer >= 3, got {grid!r}")
    workers = doc.get("workers", 1)
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers", f"must be a positive integer, got {workers!r}")
    fmt = doc.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("format", f"must be 'csv' or 'json', got {fmt!r}")
    out = doc.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError("out", "must be a path string")

    return RunConfig(
        scenario=scenario,
        schemes=schemes,
        params=params,
        topology=topology,
        p_db=tuple(p_db),
        trials=trials,
        seed=seed,
        t_grid_size=grid,
        out=out,
        fmt=fmt,
        workers=workers,
    )
