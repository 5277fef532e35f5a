"""Shared CSV loading and array validation for the figure scripts.

The scripts consume the CSV files the dqdsim CLI emits and never import
the simulator; all assertions run on the numeric arrays extracted for
plotting, never on rendered pixels.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

TRAJECTORY_COLUMNS = [
    "t_ps", "rho_rr", "rho_ll", "rho_rl_re", "rho_rl_im",
    "f1_uev", "f2_uev", "v", "p_l", "fidelity",
    "bloch_x", "bloch_y", "bloch_z", "branch",
]

BLOCH_NORM_TOL = 1e-6


class SchemaError(ValueError):
    """The input file does not match the trajectory/sweep CSV contract."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: what kind, from which CSV, to which image."""

    kind: str  # trace | heatmap | bloch3d
    input_path: str
    output_path: str
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""


def load_trajectory_csv(path: str) -> dict:
    """Load a trajectory CSV, checking the column contract.

    Returns a dict of float arrays keyed by column (plus the branch tags);
    a missing column is reported by name.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        missing = [c for c in TRAJECTORY_COLUMNS if c not in names]
        if missing:
            raise SchemaError(f"{path}: missing column(s): {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = {c: np.array([float(r[c]) for r in rows])
            for c in TRAJECTORY_COLUMNS if c != "branch"}
    data["branch"] = [r["branch"] for r in rows]
    return data


def load_sweep_csv(path: str) -> dict:
    """Load a sweep CSV (axis1, axis2, value, masked) into a dense grid."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        names = reader.fieldnames or []
        if len(names) != 4 or names[2:] != ["value", "masked"]:
            raise SchemaError(
                f"{path}: expected columns <axis1>,<axis2>,value,masked, got {names}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    ax1_name, ax2_name = names[0], names[1]
    ax1 = np.array(sorted({float(r[ax1_name]) for r in rows}))
    ax2 = np.array(sorted({float(r[ax2_name]) for r in rows}))
    grid = np.full((len(ax1), len(ax2)), np.nan)
    mask = np.ones((len(ax1), len(ax2)), dtype=bool)
    for r in rows:
        i = int(np.argmin(np.abs(ax1 - float(r[ax1_name]))))
        j = int(np.argmin(np.abs(ax2 - float(r[ax2_name]))))
        grid[i, j] = float(r["value"])
        mask[i, j] = r["masked"].strip() == "1"
    return {"axis1_name": ax1_name, "axis2_name": ax2_name,
            "axis1": ax1, "axis2": ax2, "grid": grid, "mask": mask}


def assert_finite(name: str, arr: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def bloch_norms(data: dict) -> np.ndarray:
    """Norm of the Bloch vector per record, enforcing |r| <= 1 + tol."""
    norm = np.sqrt(data["bloch_x"] ** 2 + data["bloch_y"] ** 2
                   + data["bloch_z"] ** 2)
    worst = float(np.max(norm))
    if worst > 1.0 + BLOCH_NORM_TOL:
        raise ValueError(
            f"Bloch vector leaves the unit sphere (max norm {worst:.8f})")
    return norm
