"""Beam patterns of the angular codebook.

Sweeps a test UE over the quadrant and evaluates the reflected array gain
under each codebook configuration. The configured profiles must peak
exactly at their design angles with the full coherent gain (nx*nz)^2.
"""

import os

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ris_ra import Carrier, Panel, array_factor, build_codebook, linear_to_db

# Parameters
fc = 3e9
nx = nz = 10
theta_b_deg = 45.0
S = 4

carrier = Carrier(fc=fc)
panel = Panel(nx=nx, nz=nz, dx=carrier.wavelength, dz=carrier.wavelength)
theta_b = np.deg2rad(theta_b_deg)

codebook = build_codebook(S, carrier, panel, theta_b)
print("configured directions [deg]:", np.degrees(codebook.theta_s))

# Sweep the quadrant
theta_grid = np.linspace(0, np.pi / 2, 2001)
gain = np.abs(array_factor(theta_grid, theta_b, codebook.phases, panel, carrier)) ** 2

peak = (nx * nz) ** 2
fig, ax = plt.subplots(figsize=(7, 4))
for s in range(S):
    ax.plot(np.degrees(theta_grid), linear_to_db(gain[:, s] / peak),
            label=rf"$s={s + 1}$ ({np.degrees(codebook.theta_s[s]):.2f}$^\circ$)")
    # the steered angle recovers the full coherent gain
    at_peak = np.abs(array_factor(codebook.theta_s[s], theta_b,
                                  codebook.phases[s], panel, carrier)) ** 2
    assert at_peak == peak
ax.set_xlabel("UE angle [deg]")
ax.set_ylabel("normalized array gain [dB]")
ax.set_ylim(-40, 2)
ax.legend(ncols=2, fontsize=8)
ax.grid(alpha=0.3)
fig.tight_layout()

os.makedirs("output", exist_ok=True)
fig.savefig("output/beam_patterns.png", dpi=150)
print("saved output/beam_patterns.png")
