"""Command-line front end: run one scenario or a sweep, write CSV/JSONL.

Configuration is a flat ``key = value`` file (``#`` starts a comment);
command-line flags override file values.  Exit codes: 0 on success, 2 for
any configuration problem, 3 for output I/O failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields, replace

from . import scenarios
from .channels import BathParams, MeasurementStrengths
from .metrics import Scenario
from .scenarios import SWEEP_AXES, ProtocolParams
from .teleport import InputState

CSV_HEADER = "label,t_lambda,mu,fidelity,hss,chi,n_cumulative,norm"

_SCENARIOS = tuple(s.value for s in Scenario)
_FORMATS = ("csv", "jsonl")


class ConfigError(ValueError):
    """Invalid run configuration (unknown key, bad value, missing field)."""


@dataclass(frozen=True)
class RunConfig:
    scenario: str | None = None
    gamma0_over_lambda: float = 20.0
    theta: float = math.pi / 2.0
    phi: float = math.pi / 4.0
    p: float = 0.0
    q: float = 0.0
    q_prime: float = 0.0
    t_max: float = scenarios.DEFAULT_T_MAX
    dt: float = scenarios.DEFAULT_DT
    sweep_axis: str | None = None
    sweep_values: tuple[float, ...] | None = None
    out: str = "series.csv"
    format: str = "csv"


_KEYS = tuple(f.name for f in fields(RunConfig))


def _parse_float(key: str, raw: str, where: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{where}: malformed number for {key!r}: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{where}: {key} must be finite, got {raw!r}")
    return value


def _parse_value(key: str, raw: str, where: str):
    raw = raw.strip()
    if key == "scenario":
        if raw not in _SCENARIOS:
            raise ConfigError(f"{where}: scenario must be one of {_SCENARIOS}, got {raw!r}")
        return raw
    if key == "format":
        value = "jsonl" if raw == "json-lines" else raw
        if value not in _FORMATS:
            raise ConfigError(f"{where}: format must be one of {_FORMATS}, got {raw!r}")
        return value
    if key == "sweep_axis":
        if raw not in SWEEP_AXES:
            raise ConfigError(f"{where}: sweep_axis must be one of {SWEEP_AXES}, got {raw!r}")
        return raw
    if key == "sweep_values":
        parts = [part for part in raw.split(",") if part.strip()]
        if not parts:
            raise ConfigError(f"{where}: sweep_values must list at least one number")
        return tuple(_parse_float("sweep_values", part, where) for part in parts)
    if key == "out":
        if not raw:
            raise ConfigError(f"{where}: out must be a non-empty path")
        return raw
    value = _parse_float(key, raw, where)
    if key in ("p", "q", "q_prime") and not (0.0 <= value <= 1.0):
        raise ConfigError(f"{where}: {key} must lie in [0, 1], got {value:g}")
    if key == "theta" and not (0.0 <= value <= math.pi):
        raise ConfigError(f"{where}: theta must lie in [0, pi], got {value:g}")
    if key == "phi" and not (0.0 <= value < 2.0 * math.pi):
        raise ConfigError(f"{where}: phi must lie in [0, 2*pi), got {value:g}")
    if key == "gamma0_over_lambda" and value <= 0.0:
        raise ConfigError(f"{where}: gamma0_over_lambda must be positive, got {value:g}")
    if key in ("t_max", "dt") and value <= 0.0:
        raise ConfigError(f"{where}: {key} must be positive, got {value:g}")
    return value


def _parse_lines(source: str) -> RunConfig:
    cfg = RunConfig()
    for lineno, line in enumerate(source.splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, raw = (part.strip() for part in text.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        cfg = replace(cfg, **{key: _parse_value(key, raw, f"line {lineno}")})
    return cfg


def parse_config(source: str) -> RunConfig:
    """Parse a flat key = value document into a validated RunConfig."""
    return _finalize(_parse_lines(source))


def _finalize(cfg: RunConfig) -> RunConfig:
    if cfg.scenario is None:
        raise ConfigError("missing required key 'scenario'")
    if cfg.sweep_axis is not None and not cfg.sweep_values:
        raise ConfigError("sweep_axis given without sweep_values")
    if cfg.sweep_values is not None and cfg.sweep_axis is None:
        raise ConfigError("sweep_values given without sweep_axis")
    if cfg.dt > cfg.t_max:
        raise ConfigError(f"dt ({cfg.dt:g}) must not exceed t_max ({cfg.t_max:g})")
    return cfg


def render_config(cfg: RunConfig) -> str:
    """Inverse of ``parse_config`` for valid configs."""
    lines = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        if value is None:
            continue
        if f.name == "sweep_values":
            rendered = ",".join(format(v, ".17g") for v in value)
        elif isinstance(value, float):
            rendered = format(value, ".17g")
        else:
            rendered = str(value)
        lines.append(f"{f.name} = {rendered}")
    return "\n".join(lines) + "\n"


def _to_params(cfg: RunConfig) -> ProtocolParams:
    try:
        return ProtocolParams(
            bath=BathParams(cfg.gamma0_over_lambda),
            input=InputState(cfg.theta, cfg.phi),
            strengths=MeasurementStrengths(cfg.p, cfg.q, cfg.q_prime),
            t_max=cfg.t_max,
            dt=cfg.dt,
            scenario=Scenario(cfg.scenario),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def execute(cfg: RunConfig) -> list[tuple[str, list[scenarios.TimeSeriesRecord]]]:
    """Run the configured scenario (or sweep) and return labeled series."""
    base = _to_params(cfg)
    if cfg.sweep_axis is not None:
        try:
            return scenarios.sweep(base, cfg.sweep_axis, cfg.sweep_values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return [(cfg.scenario, scenarios.run_scenario(base))]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def emit(labeled_series, cfg: RunConfig) -> str:
    """Write the labeled series to ``cfg.out``; returns the path written."""
    if not labeled_series:
        raise ValueError("nothing to emit: series list is empty")
    if cfg.format == "csv":
        with open(cfg.out, "w", encoding="ascii", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for label, records in labeled_series:
                for r in records:
                    fh.write(
                        f"{label},{_fmt(r.t_lambda)},{_fmt(r.mu)},{_fmt(r.fidelity)},"
                        f"{_fmt(r.hss)},{_fmt(r.chi)},{_fmt(r.n_cumulative)},{_fmt(r.norm)}\n"
                    )
    else:
        with open(cfg.out, "w", encoding="ascii", newline="") as fh:
            for label, records in labeled_series:
                for r in records:
                    fh.write(
                        json.dumps(
                            {
                                "label": label,
                                "t_lambda": r.t_lambda,
                                "mu": r.mu,
                                "fidelity": r.fidelity,
                                "hss": r.hss,
                                "chi": r.chi,
                                "n_cumulative": r.n_cumulative,
                                "norm": r.norm,
                            }
                        )
                        + "\n"
                    )
    return cfg.out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nmteleport",
        description="Teleportation fidelity and memory-effect witnesses "
        "under non-Markovian amplitude damping.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario or a parameter sweep")
    run.add_argument("--config", help="flat key = value configuration file")
    run.add_argument("--scenario", dest="scenario")
    run.add_argument("--gamma0-over-lambda", dest="gamma0_over_lambda")
    run.add_argument("--theta", dest="theta")
    run.add_argument("--phi", dest="phi")
    run.add_argument("--p", dest="p")
    run.add_argument("--q", dest="q")
    run.add_argument("--q-prime", dest="q_prime")
    run.add_argument("--t-max", dest="t_max")
    run.add_argument("--dt", dest="dt")
    run.add_argument("--sweep", dest="sweep_axis", metavar="AXIS")
    run.add_argument("--values", dest="sweep_values", metavar="A,B,C")
    run.add_argument("--out", dest="out")
    run.add_argument("--format", dest="format", choices=_FORMATS)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {args.config!r}: {exc}") from exc
        cfg = _parse_lines(source)
    else:
        cfg = RunConfig()
    for key in _KEYS:
        raw = getattr(args, key, None)
        if raw is None:
            continue
        flag = "--" + key.replace("_", "-")
        if key == "sweep_axis":
            flag = "--sweep"
        elif key == "sweep_values":
            flag = "--values"
        cfg = replace(cfg, **{key: _parse_value(key, str(raw), flag)})
    return _finalize(cfg)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        labeled = execute(cfg)
        path = emit(labeled, cfg)
    except ConfigError as exc:
        print(f"nmteleport: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"nmteleport: i/o error: {exc}", file=sys.stderr)
        return 3
    rows = sum(len(records) for _, records in labeled)
    print(f"wrote {rows} records ({len(labeled)} series) to {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
