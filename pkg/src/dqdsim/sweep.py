"""Deterministic 2-D parameter sweeps over independent simulations."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import SystemParams
from .lyapunov import ControlConfig, simulate_lyapunov
from .lzs import LzsPulseParams, simulate_lzs
from .qubit import rho_l, rho_r

METRICS = ("max_p_l", "p_l_at_t", "max_fidelity")

# Axis name -> which piece of the base configuration it rewrites.
_PARAM_AXES = {"eps0", "delta", "gamma1", "gamma2", "t1", "t2"}
_CONTROL_AXES = {"g", "g1", "g2", "theta", "f_max", "hold_dt"}
_PULSE_AXES = {"amplitude_a", "t_r"}
_RUN_AXES = {"t_end", "t_p"}
AXIS_NAMES = _PARAM_AXES | _CONTROL_AXES | _PULSE_AXES | _RUN_AXES


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(
                f"unknown sweep axis {self.name!r}; expected one of {sorted(AXIS_NAMES)}"
            )
        if self.steps < 2:
            raise ValueError(f"axis {self.name!r} needs steps >= 2")
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name!r} needs lo < hi")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """A 2-D lattice of simulations around a base configuration."""

    axis1: SweepAxis
    axis2: SweepAxis
    metric: str
    mode: str
    params: SystemParams
    control: ControlConfig | None = None
    pulse: LzsPulseParams | None = None
    t_end: float = 150.0
    substeps: int = 10
    metric_time: float | None = None

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.mode == "lyapunov":
            if self.control is None:
                raise ValueError("lyapunov sweeps need a ControlConfig")
        elif self.mode == "lzs":
            if self.pulse is None:
                raise ValueError("lzs sweeps need LzsPulseParams")
        else:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class SweepResult:
    axis1_name: str
    axis2_name: str
    axis1_values: np.ndarray
    axis2_values: np.ndarray
    grid: np.ndarray  # shape (steps1, steps2)
    mask: np.ndarray  # True where the cell simulation failed


def _apply_axis(spec: SweepSpec, name: str, value: float) -> SweepSpec:
    if name in _PARAM_AXES:
        if name == "t1":
            return replace(spec, params=replace(spec.params, gamma1=1.0 / value))
        if name == "t2":
            return replace(spec, params=replace(spec.params, gamma2=1.0 / value))
        return replace(spec, params=replace(spec.params, **{name: value}))
    if name in _CONTROL_AXES:
        if name == "g":
            return replace(spec, control=replace(spec.control, g1=value, g2=value))
        return replace(spec, control=replace(spec.control, **{name: value}))
    if name in _PULSE_AXES:
        return replace(spec, pulse=replace(spec.pulse, **{name: value}))
    # t_end / t_p set the run duration; for p_l_at_t the readout follows it.
    new = replace(spec, t_end=value)
    if spec.metric == "p_l_at_t" and spec.metric_time is None:
        return new
    return new


def _cell_metric(spec: SweepSpec) -> float:
    if spec.mode == "lyapunov":
        cfg = spec.control
        traj = simulate_lyapunov(
            rho_r(), rho_l(), spec.params, cfg, t_end=spec.t_end, substeps=spec.substeps
        )
    else:
        traj = simulate_lzs(
            rho_r(),
            spec.params,
            spec.pulse,
            hold_dt=spec.control.hold_dt if spec.control else 1.0,
            substeps=spec.substeps,
        )
    if spec.metric == "max_p_l":
        return float(max(traj.p_l))
    if spec.metric == "max_fidelity":
        return float(max(traj.fidelity))
    t = spec.metric_time if spec.metric_time is not None else traj.times[-1]
    if t > traj.times[-1] + 1e-9:
        raise ValueError(f"metric_time {t} beyond trajectory end {traj.times[-1]}")
    i = int(np.argmin(np.abs(np.asarray(traj.times) - t)))
    return float(traj.p_l[i])


def _run_cell(args) -> tuple[int, int, float, bool]:
    spec, i, j, v1, v2 = args
    cell = _apply_axis(_apply_axis(spec, spec.axis1.name, v1), spec.axis2.name, v2)
    try:
        return i, j, _cell_metric(cell), False
    except (ValueError, FloatingPointError):
        return i, j, np.nan, True


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate the metric on every lattice cell.

    Cells are independent and deterministic; a failing cell is masked
    rather than fatal.  With workers > 1 the cells run in a process pool;
    the grid is identical to a serial run.
    """
    v1 = spec.axis1.values()
    v2 = spec.axis2.values()
    jobs = [(spec, i, j, v1[i], v2[j]) for i in range(len(v1)) for j in range(len(v2))]
    grid = np.full((len(v1), len(v2)), np.nan)
    mask = np.zeros((len(v1), len(v2)), dtype=bool)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, jobs, chunksize=8))
    else:
        results = [_run_cell(job) for job in jobs]
    for i, j, value, failed in results:
        grid[i, j] = value
        mask[i, j] = failed
    return SweepResult(
        axis1_name=spec.axis1.name,
        axis2_name=spec.axis2.name,
        axis1_values=v1,
        axis2_values=v2,
        grid=grid,
        mask=mask,
    )


def best_point(result: SweepResult) -> tuple[float, float, float]:
    """Coordinates and value of the maximal unmasked cell.

    Ties break toward the smallest axis1 value, then the smallest axis2.
    """
    if result.mask.all():
        raise ValueError("sweep result is fully masked")
    best = None
    for i in range(result.grid.shape[0]):
        for j in range(result.grid.shape[1]):
            if result.mask[i, j]:
                continue
            v = result.grid[i, j]
            if best is None or v > best[2]:
                best = (result.axis1_values[i], result.axis2_values[j], v)
    return best
