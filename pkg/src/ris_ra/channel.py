"""Far-field channel model of a BS-RIS-UE cascade link.

Geometry: the RIS occupies the x-z plane with its normal along +y. BS and
UEs sit in the x-y plane and are located by their distance from the RIS
center and their angle from the normal. All deterministic EM quantities of
the in-plane link live here: pathloss, propagation phase, array factor,
and the angular configuration codebook.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import speed_of_light

DOWNLINK = "dl"
UPLINK = "ul"


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def dbm_to_watt(x_dbm):
    return 10.0 ** (np.asarray(x_dbm, dtype=float) / 10.0) * 1e-3


@dataclass(frozen=True)
class Carrier:
    """Carrier frequency plus derived wave quantities."""

    fc: float
    c: float = speed_of_light

    def __post_init__(self):
        if self.fc <= 0:
            raise ValueError("carrier frequency must be positive")

    @property
    def wavelength(self) -> float:
        return self.c / self.fc

    @property
    def wavenumber(self) -> float:
        return 2.0 * np.pi / self.wavelength


@dataclass(frozen=True)
class Panel:
    """Rectangular RIS of nx * nz elements of size dx * dz (meters).

    Elements are wavelength-scale: dx, dz <= lambda. Indexing follows the
    axis direction, m = 1..nx along x and n = 1..nz along z.
    """

    nx: int
    nz: int
    dx: float
    dz: float

    def __post_init__(self):
        if self.nx < 1 or self.nz < 1:
            raise ValueError("element counts must be positive")
        if self.dx <= 0 or self.dz <= 0:
            raise ValueError("element sizes must be positive")

    @property
    def Dx(self) -> float:
        return self.nx * self.dx

    @property
    def Dz(self) -> float:
        return self.nz * self.dz


@dataclass(frozen=True)
class Placement:
    """A node in the x-y plane: distance d from the RIS center, angle theta
    from the RIS normal (the +y axis), theta in [0, pi/2]."""

    d: float
    theta: float

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("distance must be positive")
        if not 0 <= self.theta <= np.pi / 2:
            raise ValueError("angle must be in [0, pi/2]")

    @property
    def x(self) -> float:
        return self.d * np.sin(self.theta)

    @property
    def y(self) -> float:
        return self.d * np.cos(self.theta)

    @classmethod
    def from_xy(cls, x: float, y: float) -> "Placement":
        # theta measured from the normal, so tan(theta) = x / y
        return cls(d=float(np.hypot(x, y)), theta=float(np.arctan2(x, y)))


@dataclass(frozen=True)
class LinkBudget:
    """Gains (linear), powers (W), noise power (W), decode threshold
    (linear SNR) and packet length in symbols."""

    G_b: float
    G_k: float
    rho_b: float
    rho_k: float
    sigma2: float
    gamma_th: float
    L: int = 100

    def __post_init__(self):
        for name in ("G_b", "G_k", "rho_b", "rho_k", "sigma2", "gamma_th"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.L < 1:
            raise ValueError("L must be >= 1")


@dataclass(frozen=True)
class Codebook:
    """S reflection directions theta_s and per-element phase profiles.

    phases[s, m-1] is the phase applied by element m under configuration
    s+1 (rows follow configuration order, directions strictly increasing).
    """

    theta_s: np.ndarray
    phases: np.ndarray
    delta: float

    @property
    def S(self) -> int:
        return len(self.theta_s)


def build_codebook(S: int, carrier: Carrier, panel: Panel, theta_b: float) -> Codebook:
    """Angular codebook splitting the quadrant into S directions.

    Direction s sits at delta/2 + (s-1)*delta with delta = pi/(2S); its
    profile cancels the BS-side phase gradient and steers toward theta_s:
    phi_s(m) = omega * (sin(theta_b) - sin(theta_s)) * m * dx.
    """
    if S < 1:
        raise ValueError("codebook needs at least one configuration")
    delta = np.pi / (2 * S)
    theta_s = delta / 2 + np.arange(S) * delta
    m = np.arange(1, panel.nx + 1)
    # factored as omega * (sin - sin) * (m*dx) so that the geometric term of
    # the array factor cancels it exactly when theta_k == theta_s
    phases = carrier.wavenumber * (np.sin(theta_b) - np.sin(theta_s))[:, None] * (m * panel.dx)[None, :]
    return Codebook(theta_s=theta_s, phases=phases, delta=delta)


def array_factor(theta_k, theta_b: float, profile: np.ndarray, panel: Panel, carrier: Carrier):
    """Coherent sum over elements for a UE at theta_k.

    A = nz * sum_m exp(j(omega*(sin theta_k - sin theta_b)*m*dx + profile[m])).

    profile may be a single (nx,) phase profile or a stacked (S, nx) array;
    theta_k may be scalar or (K,). Returns complex with shape (), (S,),
    (K,) or (K, S) accordingly.
    """
    theta_k = np.asarray(theta_k, dtype=float)
    profile = np.asarray(profile, dtype=float)
    m = np.arange(1, panel.nx + 1)
    geo = carrier.wavenumber * (np.sin(theta_k) - np.sin(theta_b))[..., None] * (m * panel.dx)
    if profile.ndim == 2 and theta_k.ndim >= 1:
        geo = geo[..., None, :]  # (K, nx) against (S, nx) -> (K, S, nx)
    return panel.nz * np.exp(1j * (geo + profile)).sum(axis=-1)


def pathloss(direction: str, budget: LinkBudget, panel: Panel, d_b: float, d_k, theta_b: float, theta_k):
    """Cascade pathloss of the BS-RIS-UE link.

    beta = G_b G_k / (4 pi)^2 * (dx dz / (d_b d_k))^2 * cos^2(theta), where
    theta is the BS angle in DL and the UE angle in UL. Vectorized over d_k
    and theta_k.
    """
    d_k = np.asarray(d_k, dtype=float)
    if d_b <= 0 or np.any(d_k <= 0):
        raise ValueError("distances must be strictly positive")
    theta = theta_b if direction == DOWNLINK else theta_k
    return (budget.G_b * budget.G_k / (4 * np.pi) ** 2
            * (panel.dx * panel.dz / (d_b * d_k)) ** 2
            * np.cos(theta) ** 2)


def total_phase(carrier: Carrier, panel: Panel, d_b: float, d_k, theta_b: float, theta_k):
    """Propagation phase accumulated along BS -> RIS -> UE.

    psi = -omega*(d_b + d_k - (sin theta_b - sin theta_k)*((nx+1)/2)*dx).
    Kept unreduced; it only ever enters through exp(j psi).
    """
    if d_b <= 0 or np.any(np.asarray(d_k) <= 0):
        raise ValueError("distances must be strictly positive")
    off = (np.sin(theta_b) - np.sin(theta_k)) * ((panel.nx + 1) / 2) * panel.dx
    return -carrier.wavenumber * (d_b + np.asarray(d_k, dtype=float) - off)


def channel_coefficient(direction: str, profile: np.ndarray, carrier: Carrier, panel: Panel,
                        budget: LinkBudget, d_b: float, d_k, theta_b: float, theta_k):
    """Complex channel coefficient zeta = sqrt(beta) e^{+-j psi} A.

    The propagation phase flips sign between DL (+) and UL (-); the array
    factor itself is common to both directions.
    """
    beta = pathloss(direction, budget, panel, d_b, d_k, theta_b, theta_k)
    psi = total_phase(carrier, panel, d_b, d_k, theta_b, theta_k)
    A = array_factor(theta_k, theta_b, profile, carrier=carrier, panel=panel)
    sign = 1.0 if direction == DOWNLINK else -1.0
    shape = np.broadcast_shapes(np.shape(beta), np.shape(psi))
    if np.ndim(A) > len(shape):  # (K, S) factors against (K,) geometry
        beta = np.asarray(beta)[..., None]
        psi = np.asarray(psi)[..., None]
    return np.sqrt(beta) * np.exp(1j * sign * psi) * A


def far_field_distance(panel: Panel, carrier: Carrier) -> float:
    """Distance beyond which the plane-wave approximation holds:
    2 max(Dx^2, Dz^2) / lambda."""
    return 2.0 * max(panel.Dx ** 2, panel.Dz ** 2) / carrier.wavelength


def codebook_table(codebook: Codebook) -> list[dict]:
    """Serializable view of a codebook, angles in degrees (6 decimals)."""
    rows = []
    for s in range(codebook.S):
        rows.append({
            "config": s + 1,
            "theta_s_deg": f"{np.degrees(codebook.theta_s[s]):.6f}",
            "profile_deg": [f"{p:.6f}" for p in np.degrees(codebook.phases[s])],
        })
    return rows
