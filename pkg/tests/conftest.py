import numpy as np
import pytest

from ris_ra import (Carrier, LinkBudget, Panel, Placement, Scenario, SquareDeployment,
                    db_to_linear, dbm_to_watt)


@pytest.fixture(scope="session")
def carrier():
    return Carrier(fc=3e9)


@pytest.fixture(scope="session")
def panel(carrier):
    lam = carrier.wavelength
    return Panel(nx=10, nz=10, dx=lam, dz=lam)


@pytest.fixture(scope="session")
def budget():
    return LinkBudget(G_b=db_to_linear(5.0), G_k=db_to_linear(5.0),
                      rho_b=0.1, rho_k=0.01, sigma2=dbm_to_watt(-94.0),
                      gamma_th=db_to_linear(0.0), L=100)


@pytest.fixture(scope="session")
def bs():
    return Placement(d=25.0, theta=np.deg2rad(45.0))


@pytest.fixture(scope="session")
def scenario(carrier, panel, budget, bs):
    return Scenario(carrier=carrier, panel=panel, budget=budget, bs=bs, d_max=100.0)


@pytest.fixture(scope="session")
def dep():
    return SquareDeployment(ell0=15.0, ell=100.0)
