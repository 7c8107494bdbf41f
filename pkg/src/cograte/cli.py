"""Command-line front end.

Subcommands:
  eval   single power point, full per-scheme diagnostics as JSON
  sweep  rate-vs-P_dB table as CSV (or the JSON document with --format json)
  mc     same engine as sweep, always the full JSON document
  slope  multiplexing-gain estimates between two power points as JSON

Every number is serialized with 12 significant digits and files use LF line
endings, so identical (config, seed) runs produce byte-identical output.
Exit codes: 0 success, 2 configuration/input error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from .analysis import SchemeEval, evaluate_scheme, monte_carlo_sweep, multiplexing_slope, slope_reference
from .channel import (
    LINK_ORDER,
    ChannelRealization,
    Seed,
    _link_shapes,
    deterministic_gains,
    sample_rayleigh,
)
from .config import RunConfig, build_config, load_config_file, parse_pdb
from .errors import ChannelFileError, CograteError, ConfigError

__all__ = ["main", "cmd_eval", "cmd_sweep", "cmd_slope", "cmd_mc"]

CSV_HEADER = "scheme,P_dB,rate_bits,t_star,alpha,u,rate1,rate2,trials,seed"


def _fmt(value) -> str:
    """12-significant-digit text for numbers, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.12g}"


def _round12(obj):
    """Recursively round floats to 12 significant digits for JSON output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _dump_json(doc: dict) -> str:
    return json.dumps(_round12(doc), indent=2, allow_nan=False) + "\n"


def _complex_to_json(value):
    value = np.asarray(value, dtype=complex)
    if value.ndim == 0:
        c = complex(value)
        return [c.real, c.imag]
    return [_complex_to_json(row) for row in value]


def _channel_to_json(ch: ChannelRealization) -> dict:
    return {name: _complex_to_json(getattr(ch, name)) for name in LINK_ORDER}


def _entry_from_json(node, name: str):
    if (
        isinstance(node, list)
        and len(node) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in node)
    ):
        return complex(float(node[0]), float(node[1]))
    raise ChannelFileError(f"{name}: complex entries must be [re, im] pairs, got {node!r}")


def _array_from_json(node, shape: tuple[int, ...], name: str):
    if shape == ():
        return _entry_from_json(node, name)
    if not isinstance(node, list) or len(node) != shape[0]:
        raise ChannelFileError(f"{name}: expected a list of length {shape[0]}")
    values = [_array_from_json(item, shape[1:], name) for item in node]
    return np.array(values, dtype=complex)


def parse_channel_file(path: str, scenario: str, m: int) -> ChannelRealization:
    """Load a fixed-channel JSON file ({'channel': {...}} or bare mapping)."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ChannelFileError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ChannelFileError(f"invalid JSON in {path}: {exc}")
    if not isinstance(doc, dict):
        raise ChannelFileError("channel file must hold a JSON object")
    if doc.get("scenario", scenario) != scenario:
        raise ChannelFileError(
            f"channel file is for scenario {doc['scenario']!r}, config says {scenario!r}"
        )
    node = doc.get("channel", doc)
    if not isinstance(node, dict):
        raise ChannelFileError("'channel' must be an object of link coefficients")
    missing = [name for name in LINK_ORDER if name not in node]
    if missing:
        raise ChannelFileError(f"missing links: {missing}")
    shapes = _link_shapes(scenario, m)
    values = {
        name: _array_from_json(node[name], shapes[name], name) for name in LINK_ORDER
    }
    try:
        return ChannelRealization(scenario=scenario, **values)
    except ValueError as exc:
        raise ChannelFileError(str(exc))


def _eval_realization(cfg: RunConfig) -> ChannelRealization:
    if cfg.trials == 0:
        return deterministic_gains(cfg.topology, cfg.params, cfg.scenario)
    return sample_rayleigh(cfg.topology, cfg.params, cfg.scenario, Seed(cfg.seed, 0))


def _eval_to_json(ev: SchemeEval) -> dict:
    return {
        "total_rate": ev.total_rate,
        "t_star": ev.t_star,
        "alpha": ev.alpha,
        "u": ev.u,
        "rate1": ev.rate1,
        "rate2": ev.rate2,
        "diagnostics": dict(ev.diagnostics),
    }


def cmd_eval(cfg: RunConfig, p_db: float, channel_path: str | None = None) -> dict:
    """Single-point evaluation document with full diagnostics."""
    if channel_path is not None:
        ch = parse_channel_file(channel_path, cfg.scenario, cfg.params.M)
    else:
        ch = _eval_realization(cfg)
    params = replace(cfg.params, P=10.0 ** (p_db / 10.0))
    return {
        "scenario": cfg.scenario,
        "P_dB": p_db,
        "params": {
            "p": params.p,
            "beta": params.beta,
            "M": params.M,
            "pathloss_exponent": params.pathloss_exponent,
            "P": params.P,
        },
        "trials": cfg.trials,
        "seed": cfg.seed,
        "channel": _channel_to_json(ch),
        "schemes": {
            s: _eval_to_json(evaluate_scheme(s, ch, params, cfg.t_grid_size))
            for s in cfg.schemes
        },
    }


def cmd_sweep(cfg: RunConfig) -> str:
    """CSV sweep: one row per (scheme, P_dB), schemes in config order."""
    points = monte_carlo_sweep(cfg, workers=cfg.workers)
    lines = [CSV_HEADER]
    for scheme in cfg.schemes:
        for point in points:
            ev = point.evals[scheme]
            lines.append(
                ",".join(
                    (
                        scheme,
                        _fmt(point.p_db),
                        _fmt(ev.total_rate),
                        _fmt(ev.t_star),
                        _fmt(ev.alpha),
                        _fmt(ev.u),
                        _fmt(ev.rate1),
                        _fmt(ev.rate2),
                        str(point.trials),
                        str(point.seed),
                    )
                )
            )
    return "\n".join(lines) + "\n"


def cmd_mc(cfg: RunConfig) -> dict:
    """Full sweep as a JSON document (machine-readable curve data)."""
    points = monte_carlo_sweep(cfg, workers=cfg.workers)
    return {
        "scenario": cfg.scenario,
        "schemes": list(cfg.schemes),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "points": [
            {
                "P_dB": point.p_db,
                "schemes": {s: _eval_to_json(point.evals[s]) for s in cfg.schemes},
            }
            for point in points
        ],
    }


def cmd_slope(cfg: RunConfig, p_db_low: float, p_db_high: float) -> dict:
    """Per-scheme slope estimates plus their theoretical references."""
    out: dict = {
        "P_dB_low": p_db_low,
        "P_dB_high": p_db_high,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "schemes": {},
    }
    for scheme in cfg.schemes:
        est = multiplexing_slope(
            scheme,
            cfg.topology,
            cfg.params,
            p_db_low,
            p_db_high,
            cfg.trials,
            cfg.seed,
            cfg.t_grid_size,
            scenario=cfg.scenario,
        )
        ref = slope_reference(scheme, cfg.params, cfg.scenario)
        out["schemes"][scheme] = {
            "slope": est,
            "reference": ref,
            "difference": est - ref,
        }
    return out


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cograte",
        description="Achievable rates and power splits for generalized cognitive-radio links.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("eval", "evaluate all schemes at one power point"),
        ("sweep", "rate-vs-power table (CSV by default)"),
        ("mc", "Monte Carlo sweep as a JSON document"),
        ("slope", "multiplexing-gain estimates between two power points"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="JSON config file")
        cmd.add_argument("--preset", choices=["fig2", "fig3"], help="built-in parameter preset")
        cmd.add_argument("--scheme", help="comma-separated scheme list")
        cmd.add_argument("--pdb", help="P_dB point, pair, or start:stop:step range")
        cmd.add_argument("--trials", type=int, help="fading trials (0 = fixed path-loss gains)")
        cmd.add_argument("--seed", type=int, help="base RNG seed")
        cmd.add_argument("--t-grid", type=int, dest="t_grid", help="power-split grid size")
        cmd.add_argument("--workers", type=int, help="trial evaluation threads")
        cmd.add_argument("--out", help="output path (default stdout)")
        cmd.add_argument("--format", choices=["csv", "json"], help="sweep output format")
        if name == "eval":
            cmd.add_argument("--channel", help="fixed-channel JSON file")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    file_doc = load_config_file(args.config) if args.config else None
    overrides: dict = {
        "schemes": args.scheme,
        "trials": args.trials,
        "seed": args.seed,
        "t_grid_size": args.t_grid,
        "workers": args.workers,
        "out": args.out,
        "format": args.format,
    }
    if args.pdb is not None:
        overrides["sweep"] = {"P_dB": parse_pdb(args.pdb)}
    return build_config(preset=args.preset, file_doc=file_doc, overrides=overrides)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "eval":
            if len(cfg.p_db) != 1:
                raise ConfigError("pdb", "eval needs exactly one power point")
            doc = cmd_eval(cfg, cfg.p_db[0], getattr(args, "channel", None))
            _write_output(_dump_json(doc), cfg.out)
        elif args.command == "sweep":
            if cfg.fmt == "json":
                _write_output(_dump_json(cmd_mc(cfg)), cfg.out)
            else:
                _write_output(cmd_sweep(cfg), cfg.out)
        elif args.command == "mc":
            _write_output(_dump_json(cmd_mc(cfg)), cfg.out)
        elif args.command == "slope":
            if len(cfg.p_db) < 2:
                raise ConfigError("pdb", "slope needs two power points (low:high)")
            doc = cmd_slope(cfg, cfg.p_db[0], cfg.p_db[-1])
            _write_output(_dump_json(doc), cfg.out)
    except (ConfigError, ChannelFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CograteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
