"""Analytic pathloss distributions vs Monte Carlo.

Drops UEs uniformly on the square region and compares the closed-form
CDF/PDF of the cascade pathloss, in both directions, against the
empirical distribution.
"""

import os

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ris_ra import (Carrier, LinkBudget, Panel, SquareDeployment, db_to_linear, dbm_to_watt,
                    dl_pathloss_cdf, dl_pathloss_pdf, dl_support, pathloss_constant,
                    sample_dl_pathloss, sample_ul_pathloss, ul_pathloss_cdf, ul_pathloss_pdf,
                    ul_support)

# Parameters
fc = 3e9
d_b = 25.0
theta_b = np.deg2rad(45.0)
ell0, ell = 15.0, 100.0
n_samples = 400_000
seed = 5

carrier = Carrier(fc=fc)
panel = Panel(nx=10, nz=10, dx=carrier.wavelength, dz=carrier.wavelength)
budget = LinkBudget(G_b=db_to_linear(5), G_k=db_to_linear(5), rho_b=0.1, rho_k=0.01,
                    sigma2=dbm_to_watt(-94), gamma_th=1.0)
dep = SquareDeployment(ell0=ell0, ell=ell)
omega = pathloss_constant(budget, panel, d_b)
rng = np.random.default_rng(seed)

fig, axes = plt.subplots(2, 2, figsize=(9, 6))
for row, side in enumerate(("downlink", "uplink")):
    if side == "downlink":
        samples = sample_dl_pathloss(n_samples, omega, theta_b, dep, rng)
        lo, hi = dl_support(omega, theta_b, dep)
        grid = np.linspace(lo, hi, 400)
        cdf = dl_pathloss_cdf(grid, omega, theta_b, dep)
        pdf = dl_pathloss_pdf(grid, omega, theta_b, dep)
    else:
        samples = sample_ul_pathloss(n_samples, omega, dep, rng)
        lo, hi = ul_support(omega, dep)
        grid = np.linspace(lo, hi, 400)
        cdf = ul_pathloss_cdf(grid, omega, dep)
        pdf = ul_pathloss_pdf(grid, omega, dep)

    ax = axes[row, 0]
    ecdf = np.searchsorted(np.sort(samples), grid, side="right") / n_samples
    ax.plot(grid, ecdf, "C1", lw=3, alpha=0.5, label="empirical")
    ax.plot(grid, cdf, "C0", lw=1, label="analytic")
    ax.set_title(f"{side} CDF")
    ax.set_xlabel(r"$\beta$")
    ax.legend()
    ax.grid(alpha=0.3)

    ax = axes[row, 1]
    ax.hist(samples, bins=120, density=True, color="C1", alpha=0.5, label="empirical")
    ax.plot(grid, pdf, "C0", lw=1, label="analytic")
    ax.set_title(f"{side} PDF")
    ax.set_xlabel(r"$\beta$")
    ax.legend()
    ax.grid(alpha=0.3)

    gap = np.max(np.abs(cdf - ecdf))
    print(f"{side}: support [{lo:.3e}, {hi:.3e}], max |CDF - eCDF| = {gap:.2e}")

fig.tight_layout()
os.makedirs("output", exist_ok=True)
fig.savefig("output/pathloss_distributions.png", dpi=150)
print("saved output/pathloss_distributions.png")
