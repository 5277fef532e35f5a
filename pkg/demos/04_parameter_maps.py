#!/usr/bin/env python3
"""Desk-scale parameter maps of the feedback transfer.

Left: peak transfer over the (gain, initial detuning) lattice at the
1 ps pulse-generator resolution; cells where the sampled loop cannot
drive the transfer show up dark (small detuning is a structural stall
of the law, large detuning aliases against the hold grid).
Right: peak fidelity over (run length, dephasing time).
"""
import pathlib
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dqdsim import (
    ControlConfig,
    SweepAxis,
    SweepSpec,
    SystemParams,
    best_point,
    run_sweep,
)

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

gamma = 2e-4
base = dict(
    params=SystemParams(eps0=90.0, delta=5.0, gamma1=gamma, gamma2=gamma),
    control=ControlConfig(g1=0.22, g2=0.22, hold_dt=1.0),
    metric="max_p_l",
    mode="lyapunov",
    t_end=150.0,
    substeps=6,
)

t0 = time.time()
spec1 = SweepSpec(axis1=SweepAxis("g", 0.12, 0.24, 13),
                  axis2=SweepAxis("eps0", 0.0, 150.0, 16), **base)
res1 = run_sweep(spec1, workers=4)
g_best, eps_best, p_best = best_point(res1)
print(f"(g, eps0) map in {time.time() - t0:.1f} s; "
      f"best P = {p_best:.4f} at g = {g_best:.3f}, eps0 = {eps_best:.0f} ueV")

base2 = dict(base, metric="max_fidelity")
spec2 = SweepSpec(axis1=SweepAxis("t_p", 20.0, 160.0, 15),
                  axis2=SweepAxis("t2", 1000.0, 10000.0, 10), **base2)
res2 = run_sweep(spec2, workers=4)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
im1 = ax1.imshow(res1.grid, origin="lower", aspect="auto", cmap="viridis",
                 extent=(res1.axis2_values[0], res1.axis2_values[-1],
                         res1.axis1_values[0], res1.axis1_values[-1]))
ax1.set_xlabel("eps0 (ueV)")
ax1.set_ylabel("gain g1 = g2")
ax1.set_title("peak transfer probability")
fig.colorbar(im1, ax=ax1)

im2 = ax2.imshow(res2.grid, origin="lower", aspect="auto", cmap="magma",
                 extent=(res2.axis2_values[0], res2.axis2_values[-1],
                         res2.axis1_values[0], res2.axis1_values[-1]))
ax2.set_xlabel("T2 (ps)")
ax2.set_ylabel("run length (ps)")
ax2.set_title("peak fidelity")
fig.colorbar(im2, ax=ax2)

fig.tight_layout()
fig.savefig(OUT / "04_parameter_maps.png", dpi=150)
print(f"figure -> {OUT / '04_parameter_maps.png'}")
