"""Exact 2x2 operator algebra for a charge qubit in the (|R>, |L>) basis.

Basis ordering is fixed: index 0 is |R> (the ground dot, Bloch north
pole), index 1 is |L> (the excited dot, south pole).  The population of
|L> is therefore rho[1, 1].  Energies are in micro-eV, times in ps.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Reduced Planck constant in ueV*ps (CODATA 6.582119569e-16 eV*s).
HBAR_UEV_PS = 658.2119569

_SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    # |R><L|: relaxes the excited |L> into the ground |R>.
    "minus": np.array([[0, 1], [0, 0]], dtype=complex),
}

IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class PhysConstants:
    """Physical constants of the unit system (ueV for energy, ps for time)."""

    hbar: float = HBAR_UEV_PS

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


def pauli(axis: str) -> np.ndarray:
    """Return sigma_x/y/z or the lowering operator sigma_minus = |R><L|."""
    try:
        return _SIGMA[axis].copy()
    except KeyError:
        raise ValueError(
            f"unknown axis {axis!r}; expected one of x, y, z, minus"
        ) from None


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def rho_r() -> np.ndarray:
    """Density matrix of the ground state |R><R| = diag(1, 0)."""
    return np.diag([1.0, 0.0]).astype(complex)


def rho_l() -> np.ndarray:
    """Density matrix of the target state |L><L| = diag(0, 1)."""
    return np.diag([0.0, 1.0]).astype(complex)


def pure_state(psi) -> np.ndarray:
    """Density matrix |psi><psi| of a (not necessarily normalized) ket."""
    psi = np.asarray(psi, dtype=complex).reshape(2)
    norm = np.vdot(psi, psi).real
    if norm <= 0:
        raise ValueError("cannot normalize the zero ket")
    return np.outer(psi, psi.conj()) / norm


def rho_plus() -> np.ndarray:
    """|+><+| with |+> = (|R> + |L>)/sqrt(2)."""
    return pure_state([1.0, 1.0])


def random_density_matrix(rng: np.random.Generator, pure: bool = False) -> np.ndarray:
    """Draw a random valid density matrix (Hilbert-Schmidt-ish measure)."""
    if pure:
        psi = rng.normal(size=2) + 1j * rng.normal(size=2)
        return pure_state(psi)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    m = a @ a.conj().T
    return m / np.trace(m).real


def check_density_matrix(
    rho: np.ndarray,
    trace_tol: float = 1e-9,
    eig_tol: float = 1e-9,
    herm_tol: float = 1e-9,
) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return rho unchanged.

    Raises ValueError naming the violated invariant.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.view(float))):
        raise ValueError("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > trace_tol or abs(np.trace(rho).imag) > trace_tol:
        raise ValueError(f"density matrix trace {np.trace(rho)} is not 1")
    if eigvals_hermitian(rho)[0] < -eig_tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def eigvals_hermitian(m: np.ndarray) -> tuple[float, float]:
    """Eigenvalues (ascending) of a Hermitian 2x2 matrix, closed form."""
    half_tr = 0.5 * (m[0, 0].real + m[1, 1].real)
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    disc = max(half_tr * half_tr - det, 0.0)
    r = np.sqrt(disc)
    return half_tr - r, half_tr + r


def matrix_sqrt_psd(m: np.ndarray, eig_tol: float = 1e-9) -> np.ndarray:
    """Hermitian PSD square root s of m with s @ s = m.

    Eigenvalues in [-eig_tol, 0) are clamped to zero; anything lower, or a
    non-Hermitian input, is a domain error.
    """
    m = np.asarray(m, dtype=complex)
    if np.max(np.abs(m - m.conj().T)) > 1e-9:
        raise ValueError("matrix square root requires a Hermitian input")
    w, v = np.linalg.eigh(m)
    if w[0] < -eig_tol:
        raise ValueError(f"matrix is not PSD (eigenvalue {w[0]:.3e})")
    w = np.clip(w, 0.0, None)
    # eigenvalues within rounding noise of zero are zero; sqrt would
    # otherwise amplify them to ~1e-8 scale
    w[w < w[-1] * 1e-14] = 0.0
    w = np.sqrt(w)
    s = (v * w) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def bloch_coords(rho: np.ndarray) -> tuple[float, float, float]:
    """Bloch vector (tr rho sigma_x, tr rho sigma_y, tr rho sigma_z)."""
    x = 2.0 * rho[0, 1].real
    y = -2.0 * rho[0, 1].imag
    z = (rho[0, 0] - rho[1, 1]).real
    return x, y, z


def rotation(axis: str, angle: float) -> np.ndarray:
    """Bloch rotation exp(-i angle sigma_axis / 2) for axis 'y' or 'z'."""
    if not np.isfinite(angle):
        raise ValueError("rotation angle must be finite")
    half = 0.5 * angle
    if axis == "y":
        c, s = np.cos(half), np.sin(half)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if axis == "z":
        return np.diag([np.exp(-1j * half), np.exp(1j * half)])
    raise ValueError(f"unknown rotation axis {axis!r}; expected y or z")
