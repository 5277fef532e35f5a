"""Controlled Lindblad master equation with a sample-and-hold integrator.

The qubit evolves under

    drho/dt = -(i/hbar)[H, rho]
              + Gamma1 (sm rho sp - {sp sm, rho}/2)
              + Gamma2 (sz rho sz - rho)

with sigma_minus = |R><L| (relaxation |L> -> |R>) and sigma_z dephasing.
Control fields are piecewise constant on a hardware hold grid; each hold
interval is integrated with fixed-step classical RK4.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .metrics import bures_fidelity
from .qubit import (
    PhysConstants,
    bloch_coords,
    check_density_matrix,
    commutator,
    eigvals_hermitian,
    pauli,
    rho_l,
)

BLOWUP_EIG_TOL = -1e-6

_SX = pauli("x")
_SY = pauli("y")
_SZ = pauli("z")
_SM = pauli("minus")
_SP = _SM.conj().T
_SPSM = _SP @ _SM  # |L><L|


@dataclass(frozen=True)
class SystemParams:
    """Physical configuration of the double-dot qubit.

    eps0: initial detuning (ueV); delta: anti-crossing gap (ueV);
    gamma1 = 1/T1 and gamma2 = 1/T2 in 1/ps.
    """

    eps0: float
    delta: float
    gamma1: float
    gamma2: float
    constants: PhysConstants = field(default_factory=PhysConstants)

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("delta must be >= 0")
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be >= 0")


@dataclass(frozen=True)
class ControlSample:
    """Control field values (ueV) held constant over one hold interval."""

    f1: float = 0.0
    f2: float = 0.0


@dataclass
class Trajectory:
    """Time-indexed record of the simulated state, one row per hold boundary."""

    times: list[float] = field(default_factory=list)
    states: list[np.ndarray] = field(default_factory=list)
    controls: list[ControlSample] = field(default_factory=list)
    v_values: list[float] = field(default_factory=list)
    p_l: list[float] = field(default_factory=list)
    fidelity: list[float] = field(default_factory=list)
    bloch: list[tuple[float, float, float]] = field(default_factory=list)
    branches: list[str] = field(default_factory=list)
    clamped: list[bool] = field(default_factory=list)
    # Largest |tr rho - 1| seen before per-step renormalization.
    max_trace_drift: float = 0.0

    def __len__(self) -> int:
        return len(self.times)


def hamiltonian(params: SystemParams, mode: str, sample: ControlSample) -> np.ndarray:
    """Hamiltonian (ueV) for the given control mode.

    'lzs':      eps0/2 sz + delta sx + f2/2 sz   (triangular-pulse drive on
                the detuning; f1 is ignored, the sx coefficient is fixed).
    'lyapunov': eps0/2 sz + f1 sx + f2 sy.
    """
    if mode == "lzs":
        h = 0.5 * (params.eps0 + sample.f2) * _SZ + params.delta * _SX
    elif mode == "lyapunov":
        h = 0.5 * params.eps0 * _SZ + sample.f1 * _SX + sample.f2 * _SY
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'lzs' or 'lyapunov'")
    return 0.5 * (h + h.conj().T)


def dissipator(rho: np.ndarray, params: SystemParams) -> np.ndarray:
    """Lindblad dissipation term (1/ps) for relaxation and dephasing."""
    out = np.zeros((2, 2), dtype=complex)
    if params.gamma1:
        out += params.gamma1 * (
            _SM @ rho @ _SP - 0.5 * (_SPSM @ rho + rho @ _SPSM)
        )
    if params.gamma2:
        out += params.gamma2 * (_SZ @ rho @ _SZ - rho)
    return out


def lindblad_rhs(rho: np.ndarray, h: np.ndarray, params: SystemParams) -> np.ndarray:
    """Right-hand side drho/dt (1/ps) for Hamiltonian h (ueV)."""
    return (-1j / params.constants.hbar) * commutator(h, rho) + dissipator(rho, params)


def liouvillian(h: np.ndarray, params: SystemParams) -> np.ndarray:
    """4x4 superoperator M with vec(drho/dt) = M vec(rho), row-major vec."""
    ihbar = -1j / params.constants.hbar
    eye = np.eye(2)
    m = ihbar * (np.kron(h, eye) - np.kron(eye, h.T))
    if params.gamma1:
        m = m + params.gamma1 * (
            np.kron(_SM, _SM.conj())
            - 0.5 * (np.kron(_SPSM, eye) + np.kron(eye, _SPSM.T))
        )
    if params.gamma2:
        m = m + params.gamma2 * (np.kron(_SZ, _SZ.conj()) - np.eye(4))
    return m


def _rk4_matrix(m: np.ndarray, dt: float) -> np.ndarray:
    """One-step RK4 propagator for the linear ODE v' = M v.

    For a constant M the four classical RK4 stages collapse exactly to the
    degree-4 Taylor polynomial of expm(M dt).
    """
    p = np.eye(4, dtype=complex)
    term = np.eye(4, dtype=complex)
    for k in range(1, 5):
        term = term @ m * (dt / k)
        p = p + term
    return p


def _renormalize(rho: np.ndarray) -> tuple[np.ndarray, float]:
    """Re-Hermitize and rescale trace to 1; returns (rho, raw trace drift)."""
    rho = 0.5 * (rho + rho.conj().T)
    tr = rho[0, 0].real + rho[1, 1].real
    drift = abs(tr - 1.0)
    rho = rho / tr
    lo, _ = eigvals_hermitian(rho)
    if lo < BLOWUP_EIG_TOL:
        raise FloatingPointError(
            f"integrator blow-up: state eigenvalue {lo:.3e} (reduce the step size)"
        )
    return rho, drift


def rk4_step(
    rho: np.ndarray,
    h_of_t: Callable[[float], np.ndarray],
    t: float,
    dt: float,
    params: SystemParams,
) -> np.ndarray:
    """Classical RK4 step of the master equation from t to t + dt.

    h_of_t supplies the Hamiltonian at the stage times t, t + dt/2, t + dt.
    The output is re-Hermitized and trace-renormalized; a state eigenvalue
    below -1e-6 raises FloatingPointError.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    k1 = lindblad_rhs(rho, h_of_t(t), params)
    h_mid = h_of_t(t + 0.5 * dt)
    k2 = lindblad_rhs(rho + 0.5 * dt * k1, h_mid, params)
    k3 = lindblad_rhs(rho + 0.5 * dt * k2, h_mid, params)
    k4 = lindblad_rhs(rho + dt * k3, h_of_t(t + dt), params)
    out = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out, _ = _renormalize(out)
    return out


def _renormalize_vec(v: np.ndarray) -> float:
    """In-place re-Hermitize + trace renormalization of vec(rho).

    Returns the raw trace drift; raises on integrator blow-up.
    """
    off = 0.5 * (v[1] + np.conj(v[2]))
    v[1] = off
    v[2] = np.conj(off)
    a = v[0].real
    d = v[3].real
    tr = a + d
    drift = abs(tr - 1.0)
    v[0] = a / tr
    v[3] = d / tr
    v[1] /= tr
    v[2] /= tr
    half_tr = 0.5 * (v[0].real + v[3].real)
    det = v[0].real * v[3].real - (v[1] * v[2]).real
    lo = half_tr - np.sqrt(max(half_tr * half_tr - det, 0.0))
    if lo < BLOWUP_EIG_TOL:
        raise FloatingPointError(
            f"integrator blow-up: state eigenvalue {lo:.3e} (reduce the step size)"
        )
    return drift


def evolve(
    rho0: np.ndarray,
    controller: Callable[[float, np.ndarray], ControlSample],
    t_end: float,
    hold_dt: float,
    substeps: int,
    params: SystemParams,
    mode: str,
    rho_f: np.ndarray | None = None,
) -> Trajectory:
    """Integrate the master equation under sample-and-hold control.

    At each hold boundary t_k = k * hold_dt the controller is queried once
    for a ControlSample, which is held constant while the interval is
    integrated with `substeps` RK4 steps of size hold_dt / substeps.  One
    trajectory record is appended per hold boundary (including t = 0 and
    t_end); t_end is rounded to a whole number of hold intervals.

    A controller may expose `last_diagnostics` (see the feedback controller)
    to annotate records with the control branch and saturation flag;
    otherwise records are tagged 'open_loop'.

    The per-record V and fidelity are measured against rho_f, defaulting to
    the transfer target |L><L|.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if hold_dt <= 0:
        raise ValueError("hold_dt must be positive")
    if substeps < 1:
        raise ValueError("substeps must be >= 1")
    rho0 = check_density_matrix(rho0)
    if rho_f is None:
        rho_f = rho_l()
    n_holds = max(1, round(t_end / hold_dt))
    dt = hold_dt / substeps

    traj = Trajectory()
    v = rho0.astype(complex).reshape(4).copy()
    sample = ControlSample()
    branch = "open_loop"
    clamped = False

    for k in range(n_holds + 1):
        t = k * hold_dt
        rho = v.reshape(2, 2).copy()
        if k < n_holds:
            sample = controller(t, rho)
            diag = getattr(controller, "last_diagnostics", None)
            if diag is not None:
                branch = diag.branch
                clamped = diag.clamped
        _record(traj, t, rho, sample, rho_f, branch, clamped)
        if k == n_holds:
            break
        h = hamiltonian(params, mode, sample)
        prop = _rk4_matrix(liouvillian(h, params), dt)
        for _ in range(substeps):
            v = prop @ v
            drift = _renormalize_vec(v)
            if drift > traj.max_trace_drift:
                traj.max_trace_drift = drift
    return traj


def _record(traj, t, rho, sample, rho_f, branch, clamped):
    d = rho - rho_f
    traj.times.append(t)
    traj.states.append(rho)
    traj.controls.append(sample)
    traj.v_values.append(0.5 * np.trace(d @ d).real)
    traj.p_l.append(rho[1, 1].real)
    traj.fidelity.append(bures_fidelity(rho, rho_f))
    traj.bloch.append(bloch_coords(rho))
    traj.branches.append(branch)
    traj.clamped.append(clamped)
