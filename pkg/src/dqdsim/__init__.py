"""Simulator for dissipative double-quantum-dot charge qubit state transfer:
Lyapunov feedback control and the triangular-pulse LZS baseline."""

from .dynamics import (
    ControlSample,
    SystemParams,
    Trajectory,
    evolve,
    hamiltonian,
    lindblad_rhs,
    rk4_step,
)
from .lyapunov import (
    ControlConfig,
    LyapunovController,
    LyapunovDiagnostics,
    control_direction_d,
    control_law,
    drift_term_c,
    lyapunov_v,
    simulate_lyapunov,
)
from .lzs import (
    LzsPulseParams,
    detuning_profile,
    landau_zener_prob,
    simulate_lzs,
    stuckelberg_phase,
    transfer_prob_analytic,
    transfer_prob_analytic_clamped,
)
from .metrics import RunSummary, bures_fidelity, summarize, transfer_probability
from .qubit import (
    HBAR_UEV_PS,
    PhysConstants,
    bloch_coords,
    check_density_matrix,
    commutator,
    matrix_sqrt_psd,
    pauli,
    pure_state,
    rho_l,
    rho_plus,
    rho_r,
    rotation,
)
from .sweep import SweepAxis, SweepResult, SweepSpec, best_point, run_sweep

__version__ = "0.1.0"

__all__ = [
    "HBAR_UEV_PS",
    "PhysConstants",
    "SystemParams",
    "ControlSample",
    "Trajectory",
    "ControlConfig",
    "LyapunovController",
    "LyapunovDiagnostics",
    "LzsPulseParams",
    "RunSummary",
    "SweepAxis",
    "SweepResult",
    "SweepSpec",
    "best_point",
    "bloch_coords",
    "bures_fidelity",
    "check_density_matrix",
    "commutator",
    "control_direction_d",
    "control_law",
    "detuning_profile",
    "drift_term_c",
    "evolve",
    "hamiltonian",
    "landau_zener_prob",
    "lindblad_rhs",
    "lyapunov_v",
    "matrix_sqrt_psd",
    "pauli",
    "pure_state",
    "rho_l",
    "rho_plus",
    "rho_r",
    "rk4_step",
    "rotation",
    "run_sweep",
    "simulate_lyapunov",
    "simulate_lzs",
    "stuckelberg_phase",
    "summarize",
    "transfer_probability",
    "transfer_prob_analytic",
    "transfer_prob_analytic_clamped",
]
