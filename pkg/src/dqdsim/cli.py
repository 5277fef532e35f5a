"""Command-line entry point: configure, run, and serialize simulations.

Subcommands, one per experiment family:

  simulate      one trajectory (closed-loop feedback or triangular pulse)
  analytic      closed-form single-cycle transfer probability vs pulse time
  sweep         2-D parameter grid of independent simulations
  export-bloch  feedback trajectory emitted for Bloch-sphere plotting

Every run writes the requested output plus a `.meta.json` sidecar holding
the fully resolved configuration, sufficient to reproduce the run.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import SystemParams, Trajectory
from .lyapunov import ControlConfig, simulate_lyapunov
from .lzs import LzsPulseParams, simulate_lzs, transfer_prob_analytic
from .qubit import PhysConstants, rho_l, rho_r
from .sweep import METRICS, SweepAxis, SweepResult, SweepSpec, run_sweep

TRAJECTORY_COLUMNS = [
    "t_ps", "rho_rr", "rho_ll", "rho_rl_re", "rho_rl_im",
    "f1_uev", "f2_uev", "v", "p_l", "fidelity",
    "bloch_x", "bloch_y", "bloch_z", "branch",
]

MODES = ("lyapunov", "lzs", "analytic-lzs", "sweep")


class ConfigError(ValueError):
    """Configuration rejection; the message names the offending key."""


@dataclass
class RunConfig:
    mode: str = "lyapunov"
    # system
    eps0: float = 90.0
    delta: float | None = None  # required, no default
    t1: float = 5000.0
    t2: float = 5000.0
    # controller
    g1: float = 0.22
    g2: float = 0.22
    theta: float = 5e-6
    f_max: float = 800.0
    hold_dt: float = 1.0
    substeps: int = 10
    deadpoint_kick: float = 1.0
    v_tolerance: float = 1e-5
    t_end: float = 200.0
    # triangular pulse
    amplitude_a: float | None = None
    t_r: float | None = None
    cycles: int = 1
    # analytic curve
    tp_min: float = 10.0
    tp_max: float = 400.0
    tp_steps: int = 200
    # sweep
    axis1: str | None = None  # "name:lo:hi:steps"
    axis2: str | None = None
    metric: str = "max_p_l"
    metric_time: float | None = None
    workers: int = 1
    p_l_floor: float | None = None
    # output
    out: str = "run.csv"
    format: str = "csv"


_POSITIVE = {
    "t1", "t2", "g1", "g2", "theta", "f_max", "hold_dt", "t_end",
    "amplitude_a", "t_r", "tp_min", "tp_max", "deadpoint_kick",
}
_NON_NEGATIVE = {"eps0", "delta", "v_tolerance", "metric_time"}
_POSITIVE_INT = {"substeps", "cycles", "tp_steps", "workers"}


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.mode not in MODES:
        raise ConfigError(f"mode: expected one of {MODES}, got {cfg.mode!r}")
    if cfg.delta is None:
        raise ConfigError("delta: required, no default (anti-crossing gap in ueV)")
    for key in _POSITIVE:
        val = getattr(cfg, key)
        if val is not None and not val > 0:
            raise ConfigError(f"{key}: must be positive, got {val}")
    for key in _NON_NEGATIVE:
        val = getattr(cfg, key)
        if val is not None and val < 0:
            raise ConfigError(f"{key}: must be >= 0, got {val}")
    for key in _POSITIVE_INT:
        val = getattr(cfg, key)
        if int(val) != val or val < 1:
            raise ConfigError(f"{key}: must be a positive integer, got {val}")
    if cfg.metric not in METRICS:
        raise ConfigError(f"metric: expected one of {METRICS}, got {cfg.metric!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format: expected csv or json, got {cfg.format!r}")
    return cfg


def parse_config(file_text: str | None, overrides: dict | None = None) -> RunConfig:
    """Resolve a RunConfig from a JSON document plus flag overrides.

    Flags win over file values.  Unknown keys and out-of-range values are
    rejected with the offending key named in the message.
    """
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    merged: dict = {}
    if file_text and file_text.strip():
        try:
            data = json.loads(file_text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file is not valid JSON: {e}") from None
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        merged.update(data)
    for key, val in (overrides or {}).items():
        if val is not None:
            merged[key] = val
    unknown = sorted(set(merged) - fields)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    return _validate(RunConfig(**merged))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def system_params(cfg: RunConfig) -> SystemParams:
    return SystemParams(
        eps0=cfg.eps0,
        delta=cfg.delta,
        gamma1=1.0 / cfg.t1,
        gamma2=1.0 / cfg.t2,
        constants=PhysConstants(),
    )


def control_config(cfg: RunConfig) -> ControlConfig:
    return ControlConfig(
        g1=cfg.g1, g2=cfg.g2, theta=cfg.theta, f_max=cfg.f_max,
        hold_dt=cfg.hold_dt, deadpoint_kick=cfg.deadpoint_kick,
        v_tolerance=cfg.v_tolerance,
    )


def pulse_params(cfg: RunConfig) -> LzsPulseParams:
    if cfg.amplitude_a is None:
        raise ConfigError("amplitude_a: required for the triangular pulse")
    if cfg.t_r is None:
        raise ConfigError("t_r: required for the triangular pulse")
    return LzsPulseParams(amplitude_a=cfg.amplitude_a, t_r=cfg.t_r, cycles=cfg.cycles)


def _trajectory_rows(traj: Trajectory):
    for i in range(len(traj)):
        rho = traj.states[i]
        s = traj.controls[i]
        bx, by, bz = traj.bloch[i]
        yield {
            "t_ps": traj.times[i],
            "rho_rr": rho[0, 0].real,
            "rho_ll": rho[1, 1].real,
            "rho_rl_re": rho[0, 1].real,
            "rho_rl_im": rho[0, 1].imag,
            "f1_uev": s.f1,
            "f2_uev": s.f2,
            "v": traj.v_values[i],
            "p_l": traj.p_l[i],
            "fidelity": traj.fidelity[i],
            "bloch_x": bx,
            "bloch_y": by,
            "bloch_z": bz,
            "branch": traj.branches[i],
        }


def emit_trajectory(traj: Trajectory, fmt: str = "csv") -> str:
    """Serialize a trajectory; numbers carry 17 significant digits."""
    if len(traj) == 0:
        raise ValueError("cannot emit an empty trajectory")
    rows = list(_trajectory_rows(traj))
    if fmt == "json":
        for row in rows:
            for k, v in row.items():
                if isinstance(v, float):
                    row[k] = float(v)
        return json.dumps({"columns": TRAJECTORY_COLUMNS, "rows": rows}, indent=1)
    lines = [",".join(TRAJECTORY_COLUMNS)]
    for row in rows:
        lines.append(",".join(
            row["branch"] if col == "branch" else _fmt(row[col])
            for col in TRAJECTORY_COLUMNS
        ))
    return "\n".join(lines) + "\n"


def emit_sweep(result: SweepResult, fmt: str = "csv", p_l_floor: float | None = None) -> str:
    """Serialize a sweep grid; rows are (axis1, axis2, value, masked).

    An optional display floor additionally masks cells whose value falls
    below it (the simulation value is still emitted).
    """
    mask = result.mask.copy()
    if p_l_floor is not None:
        with np.errstate(invalid="ignore"):
            mask |= np.nan_to_num(result.grid, nan=-np.inf) < p_l_floor
    if fmt == "json":
        return json.dumps({
            "axis1_name": result.axis1_name,
            "axis2_name": result.axis2_name,
            "axis1_values": [float(v) for v in result.axis1_values],
            "axis2_values": [float(v) for v in result.axis2_values],
            "grid": [[None if not np.isfinite(v) else float(v) for v in row]
                     for row in result.grid],
            "mask": result.mask.astype(int).tolist() if p_l_floor is None
                    else mask.astype(int).tolist(),
        }, indent=1)
    lines = [f"{result.axis1_name},{result.axis2_name},value,masked"]
    for i, v1 in enumerate(result.axis1_values):
        for j, v2 in enumerate(result.axis2_values):
            value = result.grid[i, j]
            cell = "nan" if not np.isfinite(value) else _fmt(value)
            lines.append(f"{_fmt(v1)},{_fmt(v2)},{cell},{int(mask[i, j])}")
    return "\n".join(lines) + "\n"


def emit_analytic(cfg: RunConfig) -> str:
    hbar = PhysConstants().hbar
    pulse_a = cfg.amplitude_a
    if pulse_a is None:
        raise ConfigError("amplitude_a: required for the analytic curve")
    lines = ["t_p_ps,p_raw,p_clamped"]
    for t_p in np.linspace(cfg.tp_min, cfg.tp_max, cfg.tp_steps):
        p = transfer_prob_analytic(pulse_a, cfg.eps0, cfg.delta, t_p, hbar)
        lines.append(f"{_fmt(t_p)},{_fmt(p)},{_fmt(min(max(p, 0.0), 1.0))}")
    return "\n".join(lines) + "\n"


def _parse_axis(text: str, which: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"{which}: expected NAME:LO:HI:STEPS, got {text!r}")
    name, lo, hi, steps = parts
    try:
        return SweepAxis(name=name, lo=float(lo), hi=float(hi), steps=int(steps))
    except ValueError as e:
        raise ConfigError(f"{which}: {e}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise ConfigError(f"cannot write output {path}: {e}") from None


def _write_sidecar(cfg: RunConfig, command: str) -> None:
    meta = {"tool": "dqdsim", "version": __version__, "command": command,
            "config": dataclasses.asdict(cfg)}
    _write(cfg.out + ".meta.json", json.dumps(meta, indent=1))


def _run_simulate(cfg: RunConfig) -> str:
    params = system_params(cfg)
    if cfg.mode == "lzs":
        traj = simulate_lzs(rho_r(), params, pulse_params(cfg),
                            hold_dt=cfg.hold_dt, substeps=cfg.substeps)
    else:
        traj = simulate_lyapunov(rho_r(), rho_l(), params, control_config(cfg),
                                 t_end=cfg.t_end, substeps=cfg.substeps)
    return emit_trajectory(traj, cfg.format)


def _run_sweep(cfg: RunConfig) -> str:
    if cfg.axis1 is None or cfg.axis2 is None:
        raise ConfigError("axis1/axis2: both axes are required for a sweep")
    spec = SweepSpec(
        axis1=_parse_axis(cfg.axis1, "axis1"),
        axis2=_parse_axis(cfg.axis2, "axis2"),
        metric=cfg.metric,
        mode="lzs" if cfg.mode == "lzs" else "lyapunov",
        params=system_params(cfg),
        control=control_config(cfg),
        pulse=pulse_params(cfg) if cfg.mode == "lzs" else None,
        t_end=cfg.t_end,
        substeps=cfg.substeps,
        metric_time=cfg.metric_time,
    )
    return emit_sweep(run_sweep(spec, workers=cfg.workers), cfg.format,
                      p_l_floor=cfg.p_l_floor)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqdsim",
        description="Double-quantum-dot charge qubit transfer simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "simulate": "run one trajectory and emit it",
        "analytic": "emit the closed-form transfer probability curve",
        "sweep": "run a 2-D parameter sweep",
        "export-bloch": "run the feedback transfer and emit the trajectory",
    }
    float_flags = [
        "eps0", "delta", "t1", "t2", "g1", "g2", "theta", "f_max",
        "hold_dt", "t_end", "deadpoint_kick", "v_tolerance",
        "amplitude_a", "t_r", "tp_min", "tp_max", "metric_time", "p_l_floor",
    ]
    int_flags = ["substeps", "cycles", "tp_steps", "workers"]
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--mode", choices=MODES)
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--g", type=float, help="set g1 and g2 together")
        for flag in float_flags:
            p.add_argument("--" + flag.replace("_", "-"), type=float)
        for flag in int_flags:
            p.add_argument("--" + flag.replace("_", "-"), type=int)
        p.add_argument("--axis1", help="sweep axis NAME:LO:HI:STEPS")
        p.add_argument("--axis2", help="sweep axis NAME:LO:HI:STEPS")
        p.add_argument("--metric", choices=METRICS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        k: v for k, v in vars(args).items()
        if k not in ("command", "config", "g") and v is not None
    }
    if args.g is not None:
        overrides.setdefault("g1", args.g)
        overrides.setdefault("g2", args.g)
    try:
        file_text = Path(args.config).read_text() if args.config else None
    except OSError as e:
        print(f"dqdsim: cannot read config: {e}", file=sys.stderr)
        return 1
    try:
        cfg = parse_config(file_text, overrides)
        if args.command == "simulate":
            text = _run_simulate(cfg)
        elif args.command == "export-bloch":
            cfg.mode = "lyapunov"
            text = _run_simulate(cfg)
        elif args.command == "analytic":
            cfg.mode = "analytic-lzs"
            text = emit_analytic(cfg)
        else:
            cfg.mode = "sweep" if cfg.mode in ("lyapunov", "sweep") else cfg.mode
            text = _run_sweep(cfg)
        _write(cfg.out, text)
        _write_sidecar(cfg, args.command)
    except (ConfigError, ValueError, FloatingPointError) as e:
        print(f"dqdsim: {e}", file=sys.stderr)
        return 1
    print(f"wrote {cfg.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
