"""Physical-optics scattered field of a rectangular plate, general geometry.

Oracle-grade engine behind the in-plane link model of channel.py. The plate
lies in the x-z plane, centered at the origin, illuminated from a far-field
source S and observed at a far-field destination D, both given in spherical
coordinates (r, theta, phi) with theta from +z and phi from +x in the x-y
plane. Polarization is TM^z throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import Carrier, Panel


def sinc(x):
    """sin(x)/x with the removable singularity filled by its series."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-8
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 - x * x / 6.0, np.sin(safe) / safe)


@dataclass(frozen=True)
class SphericalLink:
    """Far-field source and destination around the plate."""

    r_s: float
    theta_s: float
    phi_s: float
    r_d: float
    theta_d: float
    phi_d: float

    def wavenumbers(self, carrier: Carrier) -> tuple[float, float]:
        """Composite transverse wavenumbers of the source+destination pair:
        w_x = w(cos phi_S sin theta_S + cos phi_D sin theta_D),
        w_z = w(cos theta_S + cos theta_D)."""
        w = carrier.wavenumber
        wx = w * (np.cos(self.phi_s) * np.sin(self.theta_s)
                  + np.cos(self.phi_d) * np.sin(self.theta_d))
        wz = w * (np.cos(self.theta_s) + np.cos(self.theta_d))
        return wx, wz


def specular_direction(link: SphericalLink) -> tuple[float, float]:
    """Mirror-reflection direction of the source: (pi - theta_S, pi - phi_S).
    A plate with zero element phases scatters its main lobe there."""
    return np.pi - link.theta_s, np.pi - link.phi_s


def continuous_plate_field(link: SphericalLink, reflect: tuple[float, float],
                           Dx: float, Dz: float, carrier: Carrier, E_i: float = 1.0) -> complex:
    """Scattered E-field of a continuous plate steering toward `reflect`.

    The plate carries the ideal linear phase profile for the reflection
    direction (theta_r, phi_r); the stationary-phase pattern is a product
    of sincs in

        X = (w Dx / 2)(sin theta_D cos phi_D - sin theta_r cos phi_r),
        Z = (w Dz / 2)(cos theta_D - cos theta_r).
    """
    theta_r, phi_r = reflect
    w = carrier.wavenumber
    X = (w * Dx / 2) * (np.sin(link.theta_d) * np.cos(link.phi_d)
                        - np.sin(theta_r) * np.cos(phi_r))
    Z = (w * Dz / 2) * (np.cos(link.theta_d) - np.cos(theta_r))
    pref = (1j * np.exp(-1j * w * (link.r_d + link.r_s)) / (carrier.wavelength * link.r_d)
            * E_i * np.sin(link.phi_s) * np.sin(link.theta_d))
    return pref * Dx * Dz * sinc(X) * sinc(Z)


def continuous_plate_pathloss(link: SphericalLink, reflect: tuple[float, float],
                              Dx: float, Dz: float, carrier: Carrier,
                              G_s: float = 1.0, G_d: float = 1.0) -> float:
    """Power ratio of the source-plate-destination cascade.

    beta = G_S G_D / (4 pi)^2 * (Dz Dx / (r_S r_D))^2
           * sin^2 phi_S sin^2 theta_D * sinc^2 X sinc^2 Z.
    """
    theta_r, phi_r = reflect
    w = carrier.wavenumber
    X = (w * Dx / 2) * (np.sin(link.theta_d) * np.cos(link.phi_d)
                        - np.sin(theta_r) * np.cos(phi_r))
    Z = (w * Dz / 2) * (np.cos(link.theta_d) - np.cos(theta_r))
    return (G_s * G_d / (4 * np.pi) ** 2
            * (Dz * Dx / (link.r_s * link.r_d)) ** 2
            * np.sin(link.phi_s) ** 2 * np.sin(link.theta_d) ** 2
            * sinc(X) ** 2 * sinc(Z) ** 2)


def discrete_scattered_field(link: SphericalLink, panel: Panel, phases: np.ndarray,
                             carrier: Carrier, E_i: float = 1.0) -> complex:
    """Scattered E-field of the element-discretized plate.

    phases[m-1, n-1] is the configuration phase of element (m, n); element
    m is centered at x = dx*(m - (nx+1)/2), likewise along z. The field is
    the per-element stationary-phase integral times the configured array
    sum:

        E = pref * dx dz sinc(dx wx/2) sinc(dz wz/2)
            * e^{-j wx dx (nx+1)/2} e^{-j wz dz (nz+1)/2}
            * sum_mn e^{j phi(m,n)} e^{j wx m dx} e^{j wz n dz}.

    With phases == 0 this coincides exactly with the continuous bare plate
    (sum of per-element integrals == full-plate integral).
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (panel.nx, panel.nz):
        raise ValueError(f"phases must have shape {(panel.nx, panel.nz)}")
    if not np.all(np.isfinite(phases)):
        raise ValueError("phases must be finite")
    wx, wz = link.wavenumbers(carrier)
    w = carrier.wavenumber
    m = np.arange(1, panel.nx + 1)
    n = np.arange(1, panel.nz + 1)
    elem = panel.dx * panel.dz * sinc(panel.dx * wx / 2) * sinc(panel.dz * wz / 2)
    fixed = np.exp(-1j * wx * panel.dx * (panel.nx + 1) / 2) * np.exp(-1j * wz * panel.dz * (panel.nz + 1) / 2)
    array = (np.exp(1j * phases)
             * np.exp(1j * wx * m * panel.dx)[:, None]
             * np.exp(1j * wz * n * panel.dz)[None, :]).sum()
    pref = (1j * np.exp(-1j * w * (link.r_d + link.r_s)) / (carrier.wavelength * link.r_d)
            * E_i * np.sin(link.phi_s) * np.sin(link.theta_d))
    return pref * elem * fixed * array


def inplane_downlink(d_b: float, theta_b: float, d_k: float, theta_k: float,
                     theta_s: float) -> tuple[SphericalLink, tuple[float, float]]:
    """Map the in-plane DL scenario onto plate coordinates.

    BS is the source, UE the destination, all elevations at pi/2:
    phi_S = pi/2 + theta_b, phi_D = pi/2 - theta_k, phi_r = pi/2 - theta_s.
    """
    link = SphericalLink(r_s=d_b, theta_s=np.pi / 2, phi_s=np.pi / 2 + theta_b,
                         r_d=d_k, theta_d=np.pi / 2, phi_d=np.pi / 2 - theta_k)
    return link, (np.pi / 2, np.pi / 2 - theta_s)


def inplane_uplink(d_b: float, theta_b: float, d_k: float, theta_k: float,
                   theta_s: float) -> tuple[SphericalLink, tuple[float, float]]:
    """Map the in-plane UL scenario onto plate coordinates.

    UE is the source, BS the destination:
    phi_S = pi/2 - theta_k, phi_D = pi/2 + theta_b, phi_r = pi/2 + theta_s.
    """
    link = SphericalLink(r_s=d_k, theta_s=np.pi / 2, phi_s=np.pi / 2 - theta_k,
                         r_d=d_b, theta_d=np.pi / 2, phi_d=np.pi / 2 + theta_b)
    return link, (np.pi / 2, np.pi / 2 + theta_s)
