"""State and trajectory metrics: Bures fidelity, transfer probability, summaries."""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .qubit import matrix_sqrt_psd

if TYPE_CHECKING:  # pragma: no cover
    from .dynamics import Trajectory


def bures_fidelity(rho_s: np.ndarray, rho_f: np.ndarray) -> float:
    """Bures fidelity F = tr sqrt(sqrt(rho_f) rho_s sqrt(rho_f)), in [0, 1].

    For a pure target |psi><psi| this reduces to sqrt(<psi|rho_s|psi>).
    """
    s = matrix_sqrt_psd(rho_f)
    inner = s @ rho_s @ s
    f = np.trace(matrix_sqrt_psd(inner, eig_tol=1e-7)).real
    return min(max(f, 0.0), 1.0)


def transfer_probability(rho: np.ndarray) -> float:
    """Population of the target dot, <L|rho|L> = rho[1, 1]."""
    p = rho[1, 1]
    if abs(p.imag) > 1e-12:
        raise ValueError(f"population has imaginary residue {p.imag:.3e}")
    return p.real


@dataclass(frozen=True)
class RunSummary:
    """Headline figures of one trajectory."""

    max_p_l: float
    t_at_max: float
    max_fidelity: float
    final_v: float
    clamped_fraction: float


def summarize(traj: "Trajectory") -> RunSummary:
    """Aggregate a trajectory; ties in max P_L break toward the earliest time."""
    if len(traj.times) == 0:
        raise ValueError("cannot summarize an empty trajectory")
    i_max = int(np.argmax(traj.p_l))  # argmax returns the first maximum
    # The final record repeats the last held sample, so saturation is
    # counted over the n-1 actual hold intervals.
    intervals = traj.clamped[:-1] if len(traj.clamped) > 1 else traj.clamped
    return RunSummary(
        max_p_l=traj.p_l[i_max],
        t_at_max=traj.times[i_max],
        max_fidelity=max(traj.fidelity),
        final_v=traj.v_values[-1],
        clamped_fraction=float(np.mean(intervals)) if intervals else 0.0,
    )
