#!/usr/bin/env python3
"""Free-evolution sanity checks of the integrator against closed forms.

Three runs with the controller switched off:
  1. resonant coupling -> Rabi oscillation P_L(t) = sin^2(delta t / hbar)
  2. pure dephasing    -> coherence decays at exactly 2 Gamma2
  3. pure relaxation   -> population decays at exactly Gamma1
"""
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dqdsim import HBAR_UEV_PS, ControlSample, SystemParams, evolve, rho_l, rho_plus, rho_r

OUT = pathlib.Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

zero = lambda t, rho: ControlSample()

# 1. Rabi oscillation: H = delta * sigma_x at zero detuning
delta = 10.0  # ueV
params = SystemParams(eps0=0.0, delta=delta, gamma1=0.0, gamma2=0.0)
traj = evolve(rho_r(), zero, t_end=500.0, hold_dt=0.5, substeps=10,
              params=params, mode="lzs")
t = np.array(traj.times)
oracle = np.sin(delta * t / HBAR_UEV_PS) ** 2
print(f"Rabi: max deviation from sin^2 = {np.max(np.abs(traj.p_l - oracle)):.2e}")

fig, axes = plt.subplots(3, 1, figsize=(7, 8))
axes[0].plot(t, traj.p_l, label="simulated")
axes[0].plot(t, oracle, "k:", label="analytic")
axes[0].set_ylabel("P(|L>)")
axes[0].set_title(f"Rabi oscillation, gap {delta} ueV")
axes[0].legend()

# 2. dephasing: off-diagonal element of an equal superposition
gamma2 = 2e-4  # 1/ps (T2 = 5 ns)
params = SystemParams(eps0=0.0, delta=0.0, gamma1=0.0, gamma2=gamma2)
traj = evolve(rho_plus(), zero, t_end=7500.0, hold_dt=25.0, substeps=4,
              params=params, mode="lzs")
t = np.array(traj.times)
coh = np.array([s[0, 1].real for s in traj.states])
rate = -np.polyfit(t, np.log(coh), 1)[0]
print(f"dephasing: fitted rate {rate:.6e} vs 2*Gamma2 = {2 * gamma2:.6e}")
axes[1].semilogy(t, coh, label="simulated |rho_RL|")
axes[1].semilogy(t, 0.5 * np.exp(-2 * gamma2 * t), "k:", label="analytic")
axes[1].set_ylabel("coherence")
axes[1].legend()

# 3. relaxation from the excited dot
gamma1 = 2e-4
params = SystemParams(eps0=0.0, delta=0.0, gamma1=gamma1, gamma2=0.0)
traj = evolve(rho_l(), zero, t_end=15000.0, hold_dt=50.0, substeps=4,
              params=params, mode="lzs")
t = np.array(traj.times)
rate = -np.polyfit(t, np.log(traj.p_l), 1)[0]
print(f"relaxation: fitted rate {rate:.6e} vs Gamma1 = {gamma1:.6e}")
axes[2].semilogy(t, traj.p_l, label="simulated P(|L>)")
axes[2].semilogy(t, np.exp(-gamma1 * t), "k:", label="analytic")
axes[2].set_xlabel("t (ps)")
axes[2].set_ylabel("population")
axes[2].legend()

fig.tight_layout()
fig.savefig(OUT / "01_rabi_and_decay.png", dpi=150)
print(f"figure -> {OUT / '01_rabi_and_decay.png'}")
