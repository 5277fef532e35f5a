"""Landau-Zener-Stuckelberg interferometry: closed-form transfer formulas
and the open-loop triangular detuning pulse baseline."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ControlSample, SystemParams, Trajectory, evolve


@dataclass(frozen=True)
class LzsPulseParams:
    """Triangular detuning pulse: amplitude A (ueV), rising time t_r (ps).

    One cycle lasts 2 t_r and sweeps the detuning eps0 -> eps0 - A -> eps0
    at velocity v = A / t_r.
    """

    amplitude_a: float
    t_r: float
    cycles: int = 1

    def __post_init__(self):
        if self.amplitude_a <= 0:
            raise ValueError("amplitude_a must be positive")
        if self.t_r <= 0:
            raise ValueError("t_r must be positive")
        if self.cycles < 1:
            raise ValueError("cycles must be >= 1")

    @property
    def velocity(self) -> float:
        return self.amplitude_a / self.t_r

    @property
    def duration(self) -> float:
        return 2.0 * self.t_r * self.cycles


def detuning_profile(t: float, eps0: float, pulse: LzsPulseParams) -> float:
    """Detuning eps(t) of the triangular pulse, continuous and piecewise linear."""
    if t < -1e-9 or t > pulse.duration + 1e-9:
        raise ValueError(f"t={t} outside the pulse support [0, {pulse.duration}]")
    period = 2.0 * pulse.t_r
    tau = min(max(t, 0.0), pulse.duration) % period
    if t > 0 and tau == 0.0:
        tau = period
    if tau <= pulse.t_r:
        return eps0 - pulse.velocity * tau
    return eps0 - pulse.amplitude_a + pulse.velocity * (tau - pulse.t_r)


def landau_zener_prob(delta: float, v: float, hbar: float) -> float:
    """Diabatic transition probability exp(-2 pi delta^2 / (v hbar))."""
    if v <= 0:
        raise ValueError("sweep velocity v must be positive")
    return float(np.exp(-2.0 * np.pi * delta**2 / (v * hbar)))


def stuckelberg_phase(amplitude_a: float, eps0: float, v: float, hbar: float) -> float:
    """Inter-passage interference phase 2 (A - eps0)^2 / (v hbar)."""
    if v <= 0:
        raise ValueError("sweep velocity v must be positive")
    return 2.0 * (amplitude_a - eps0) ** 2 / (v * hbar)


def transfer_prob_analytic(
    amplitude_a: float, eps0: float, delta: float, t_p: float, hbar: float
) -> float:
    """Closed-form single-cycle transfer probability, as printed.

    Returns 2 x (1 - x) cos[(A - eps0)^2 t_p / (A hbar)] with
    x = exp(-pi delta^2 t_p / (A hbar)).  The expression is bounded by 0.5
    and may be negative; see transfer_prob_analytic_clamped.
    """
    if amplitude_a <= 0:
        raise ValueError("amplitude_a must be positive")
    if t_p <= 0:
        raise ValueError("t_p must be positive")
    x = np.exp(-np.pi * delta**2 * t_p / (amplitude_a * hbar))
    phase = (amplitude_a - eps0) ** 2 * t_p / (amplitude_a * hbar)
    return float(2.0 * x * (1.0 - x) * np.cos(phase))


def transfer_prob_analytic_clamped(
    amplitude_a: float, eps0: float, delta: float, t_p: float, hbar: float
) -> float:
    """transfer_prob_analytic clipped into [0, 1]."""
    p = transfer_prob_analytic(amplitude_a, eps0, delta, t_p, hbar)
    return min(max(p, 0.0), 1.0)


def lzs_controller(params: SystemParams, pulse: LzsPulseParams):
    """Open-loop sampler emitting f2(t) = eps(t) - eps0 on the hold grid."""

    def control(t: float, rho: np.ndarray) -> ControlSample:
        t = min(t, pulse.duration)
        return ControlSample(f1=0.0, f2=detuning_profile(t, params.eps0, pulse) - params.eps0)

    return control


def simulate_lzs(
    rho0: np.ndarray,
    params: SystemParams,
    pulse: LzsPulseParams,
    hold_dt: float,
    substeps: int = 10,
) -> Trajectory:
    """Density-matrix simulation of the triangular-pulse transfer.

    Drives the master equation in 'lzs' mode for one or more full pulse
    cycles, with the pulse value sampled and held on the hold grid.
    """
    return evolve(
        rho0,
        lzs_controller(params, pulse),
        t_end=pulse.duration,
        hold_dt=hold_dt,
        substeps=substeps,
        params=params,
        mode="lzs",
    )
