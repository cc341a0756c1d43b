"""Analytic distributions of the cascade pathloss over a square deployment.

UEs are dropped uniformly on the square [ell0, ell0+ell]^2 of the x-y
plane. With Omega the aggregate link constant, the DL pathloss seen by a
UE at (x, y) is Omega*cos^2(theta_b)/d^2 and the UL one is
Omega*cos^2(theta_k)/d^2 = Omega*y^2/d^4, d^2 = x^2 + y^2. Closed-form
CDFs/PDFs below follow from intersecting the relevant level sets (a circle
in DL, a circle through the origin in UL) with the square.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import LinkBudget, Panel


@dataclass(frozen=True)
class SquareDeployment:
    """Deployment region [ell0, ell0+ell] x [ell0, ell0+ell], meters."""

    ell0: float
    ell: float

    def __post_init__(self):
        if self.ell0 < 0:
            raise ValueError("ell0 must be nonnegative")
        if self.ell <= 0:
            raise ValueError("ell must be positive")

    @property
    def outer(self) -> float:
        return self.ell0 + self.ell


def pathloss_constant(budget: LinkBudget, panel: Panel, d_b: float) -> float:
    """Aggregate constant Omega with beta_dl = Omega*cos^2(theta_b)/d_k^2."""
    if d_b <= 0:
        raise ValueError("d_b must be positive")
    return budget.G_b * budget.G_k * (panel.dx * panel.dz) ** 2 / ((4 * np.pi) ** 2 * d_b ** 2)


def sample_ue_position(dep: SquareDeployment, rng: np.random.Generator, n: int | None = None):
    """Uniform position(s) on the square; returns (x, y)."""
    size = None if n is None else n
    x = rng.uniform(dep.ell0, dep.outer, size)
    y = rng.uniform(dep.ell0, dep.outer, size)
    return x, y


def sample_dl_pathloss(n: int, omega: float, theta_b: float, dep: SquareDeployment,
                       rng: np.random.Generator) -> np.ndarray:
    x, y = sample_ue_position(dep, rng, n)
    return omega * np.cos(theta_b) ** 2 / (x * x + y * y)


def sample_ul_pathloss(n: int, omega: float, dep: SquareDeployment,
                       rng: np.random.Generator) -> np.ndarray:
    x, y = sample_ue_position(dep, rng, n)
    d2 = x * x + y * y
    return omega * (y / d2) ** 2


def _check_beta(beta) -> np.ndarray:
    beta = np.asarray(beta, dtype=float)
    if np.any(beta <= 0):
        raise ValueError("pathloss must be strictly positive")
    return beta


def dl_support(omega: float, theta_b: float, dep: SquareDeployment) -> tuple[float, float]:
    """(lowest, highest) attainable DL pathloss on the square."""
    D = omega * np.cos(theta_b) ** 2
    hi = D / (2 * dep.ell0 ** 2) if dep.ell0 > 0 else np.inf
    return D / (2 * dep.outer ** 2), hi


def dl_pathloss_cdf(beta, omega: float, theta_b: float, dep: SquareDeployment):
    """Pr{beta_dl <= beta} for a uniform UE on the square.

    The event is d^2 >= r^2 with r^2 = Omega*cos^2(theta_b)/beta; the
    piecewise form tracks how the circle of radius r overlaps the square
    (fully covering it, cutting two sides, cutting the inner corner, or
    missing it).
    """
    beta = _check_beta(beta)
    D = omega * np.cos(theta_b) ** 2
    l0, l, a = dep.ell0, dep.ell, dep.outer
    r2 = D / beta

    # case B: circle cuts the outer corner region
    r2b = np.clip(r2, l0 ** 2 + a ** 2, 2 * a ** 2)
    qb = np.sqrt(np.maximum(r2b - a ** 2, 0.0))
    Fb = (a ** 2 - a * qb - r2b / 2 * np.arctan2(2 * a ** 2 - r2b, 2 * a * qb)) / l ** 2
    # case C: circle covers all but the inner corner region
    r2c = np.clip(r2, 2 * l0 ** 2, l0 ** 2 + a ** 2)
    qc = np.sqrt(np.maximum(r2c - l0 ** 2, 0.0))
    Fc = ((l ** 2 - l0 ** 2) + l0 * qc + r2c / 2 * np.arctan2(2 * l0 ** 2 - r2c, 2 * l0 * qc)) / l ** 2

    out = np.select(
        [r2 >= 2 * a ** 2, r2 >= l0 ** 2 + a ** 2, r2 > 2 * l0 ** 2],
        [np.zeros_like(r2), Fb, Fc],
        default=1.0,
    )
    return out if out.ndim else float(out)


def dl_pathloss_pdf(beta, omega: float, theta_b: float, dep: SquareDeployment):
    """Density of the DL pathloss; derivative of dl_pathloss_cdf."""
    beta = _check_beta(beta)
    D = omega * np.cos(theta_b) ** 2
    l0, l, a = dep.ell0, dep.ell, dep.outer
    r2 = D / beta
    pref = D / (2 * l ** 2 * beta ** 2)

    bb = np.clip(beta, D / (2 * a ** 2), D / (l0 ** 2 + a ** 2))
    gb = np.arctan2(2 * bb * a ** 2 - D, 2 * a * np.sqrt(bb) * np.sqrt(np.maximum(D - bb * a ** 2, 0.0)))
    hi = D / (2 * l0 ** 2) if l0 > 0 else np.inf
    bc = np.clip(beta, D / (l0 ** 2 + a ** 2), hi)
    gc = np.arctan2(2 * bc * l0 ** 2 - D, 2 * l0 * np.sqrt(bc) * np.sqrt(np.maximum(D - bc * l0 ** 2, 0.0)))

    out = np.select(
        [r2 >= 2 * a ** 2, r2 >= l0 ** 2 + a ** 2, r2 > 2 * l0 ** 2],
        [np.zeros_like(r2), pref * gb, -pref * gc],
        default=0.0,
    )
    return out if out.ndim else float(out)


def ul_support(omega: float, dep: SquareDeployment) -> tuple[float, float]:
    """(lowest, highest) attainable UL pathloss on the square."""
    l0, a = dep.ell0, dep.outer
    hi = omega / (4 * l0 ** 2) if l0 > 0 else np.inf
    return omega * (l0 / (l0 ** 2 + a ** 2)) ** 2, hi


def ul_pathloss_cdf(beta, omega: float, dep: SquareDeployment):
    """Pr{beta_ul <= beta} for a uniform UE on the square.

    With c = sqrt(beta/Omega) the event is y/(x^2+y^2) <= c, whose
    complement region is a disc of diameter 1/c through the origin; the
    branches track which sides of the square that disc crosses.
    """
    beta = _check_beta(beta)
    l0, l, a = dep.ell0, dep.ell, dep.outer
    c = np.sqrt(beta / omega)
    cA = l0 / (l0 ** 2 + a ** 2)
    cB = 1 / (2 * a)
    cC = a / (l0 ** 2 + a ** 2)
    cD = 1 / (2 * l0) if l0 > 0 else np.inf

    cb = np.clip(c, cA, cB)
    s0b = np.sqrt(np.maximum(cb * l0 * (1 - cb * l0), 0.0))
    Hb = (2 * cb * a * (np.sqrt(np.maximum(1 - 4 * cb ** 2 * a ** 2, 0.0)) - 2)
          + 2 * s0b * (1 - 2 * cb * l0) + np.arcsin(np.clip(2 * cb * a, -1, 1)) - np.arcsin(np.clip(2 * s0b, -1, 1)))
    Fb = -l0 * a / l ** 2 - Hb / (8 * cb ** 2 * l ** 2)

    cc = np.clip(c, cB, cC)
    s0c = np.sqrt(np.maximum(cc * l0 * (1 - cc * l0), 0.0))
    s1c = np.sqrt(np.maximum(cc * a * (1 - cc * a), 0.0))
    Hc = (np.pi + 2 * s0c * (1 - 2 * cc * l0) + 2 * s1c * (2 * cc * a - 1)
          - np.arcsin(np.clip(2 * s0c, -1, 1)) - np.arcsin(np.clip(2 * s1c, -1, 1)))
    Fc = 1 + l0 / l - Hc / (8 * cc ** 2 * l ** 2)

    cd = np.clip(c, cC, cD)
    s0d = np.sqrt(np.maximum(cd * l0 * (1 - cd * l0), 0.0))
    Hd = (-2 * cd * l0 * (2 + np.sqrt(np.maximum(1 - 4 * cd ** 2 * l0 ** 2, 0.0)))
          + 2 * s0d * (1 - 2 * cd * l0) + np.pi
          - np.arcsin(np.clip(2 * cd * l0, -1, 1)) - np.arcsin(np.clip(2 * s0d, -1, 1)))
    Fd = 1 - l0 ** 2 / l ** 2 - Hd / (8 * cd ** 2 * l ** 2)

    out = np.select(
        [c <= cA, c <= cB, c <= cC, c <= cD],
        [np.zeros_like(c), Fb, Fc, Fd],
        default=1.0,
    )
    return out if out.ndim else float(out)


def ul_pathloss_pdf(beta, omega: float, dep: SquareDeployment):
    """Density of the UL pathloss, obtained by differentiating the CDF in c.

    All three interior branches share the form core(c) * Omega/(8 beta^2 ell^2).
    """
    beta = _check_beta(beta)
    l0, l, a = dep.ell0, dep.ell, dep.outer
    c = np.sqrt(beta / omega)
    cA = l0 / (l0 ** 2 + a ** 2)
    cB = 1 / (2 * a)
    cC = a / (l0 ** 2 + a ** 2)
    cD = 1 / (2 * l0) if l0 > 0 else np.inf
    pref = omega / (8 * beta ** 2 * l ** 2)

    cb = np.clip(c, cA, cB)
    s0 = np.sqrt(np.maximum(cb * l0 * (1 - cb * l0), 0.0))
    core_b = (2 * s0 - 2 * cb * a + np.arcsin(np.clip(2 * cb * a, -1, 1))
              - np.arcsin(np.clip(2 * s0, -1, 1)))

    cc = np.clip(c, cB, cC)
    s0 = np.sqrt(np.maximum(cc * l0 * (1 - cc * l0), 0.0))
    s1 = np.sqrt(np.maximum(cc * a * (1 - cc * a), 0.0))
    core_c = (2 * s0 - 2 * s1 + np.pi - np.arcsin(np.clip(2 * s0, -1, 1))
              - np.arcsin(np.clip(2 * s1, -1, 1)))

    cd = np.clip(c, cC, cD)
    s0 = np.sqrt(np.maximum(cd * l0 * (1 - cd * l0), 0.0))
    core_d = (2 * s0 - 2 * cd * l0 + np.pi - np.arcsin(np.clip(2 * cd * l0, -1, 1))
              - np.arcsin(np.clip(2 * s0, -1, 1)))

    out = np.select(
        [c <= cA, c <= cB, c <= cC, c <= cD],
        [np.zeros_like(c), pref * core_b, pref * core_c, pref * core_d],
        default=0.0,
    )
    return out if out.ndim else float(out)


def ks_distance(cdf_values_or_fn, samples: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance between an analytic CDF and the
    empirical CDF of `samples`. Accepts a callable or precomputed values
    aligned with the sorted samples."""
    s = np.sort(np.asarray(samples, dtype=float))
    F = cdf_values_or_fn(s) if callable(cdf_values_or_fn) else np.asarray(cdf_values_or_fn)
    n = len(s)
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(np.abs(F - i / n), np.abs(F - (i - 1) / n))))
