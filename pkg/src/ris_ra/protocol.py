"""Training phase, access policies and uplink frame construction.

One protocol round: the BS sweeps the S codebook configurations in DL
while UEs measure per-configuration channel strengths, each UE then picks
a subset of the S access slots according to its policy, and the chosen
packets are stacked into an uplink frame for collision resolution.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import (DOWNLINK, UPLINK, Carrier, Codebook, LinkBudget, Panel, Placement,
                      build_codebook, channel_coefficient, far_field_distance)
from .distributions import SquareDeployment, sample_ue_position

SCP = "scp"   # strongest-configuration policy: transmit in the best slot only
CARP = "carp"  # quality-weighted random policy
URP = "urp"   # uniform random policy, no training

QUARTER_DISC = "quarter-disc"
SQUARE = "square"


@dataclass(frozen=True)
class Scenario:
    """Static geometry and link budget shared by all drops."""

    carrier: Carrier
    panel: Panel
    budget: LinkBudget
    bs: Placement
    d_max: float

    @property
    def far_field(self) -> float:
        return far_field_distance(self.panel, self.carrier)


@dataclass
class Drop:
    """One realization of K UE positions."""

    d: np.ndarray
    theta: np.ndarray
    model: str

    @property
    def K(self) -> int:
        return len(self.d)


def sample_drop(scenario: Scenario, K: int, rng: np.random.Generator,
                model: str = QUARTER_DISC, dep: SquareDeployment | None = None) -> Drop:
    """Draw K UE positions.

    quarter-disc: uniform by area over the sector theta in [0, pi/2],
    d in [far-field bound, d_max]. square: uniform on dep's region (the
    deployment must clear the far-field bound at its closest corner).
    """
    if model == QUARTER_DISC:
        d_ff = scenario.far_field
        if scenario.d_max <= d_ff:
            raise ValueError("d_max must exceed the far-field bound")
        u = rng.random(K)
        d = np.sqrt(u * (scenario.d_max ** 2 - d_ff ** 2) + d_ff ** 2)
        theta = rng.random(K) * (np.pi / 2)
    elif model == SQUARE:
        if dep is None:
            raise ValueError("square placement needs a deployment region")
        if dep.ell0 * np.sqrt(2) < scenario.far_field:
            raise ValueError("deployment region violates the far-field bound")
        x, y = sample_ue_position(dep, rng, K)
        d = np.hypot(x, y)
        theta = np.arctan2(x, y)
    else:
        raise ValueError(f"unknown placement model {model!r}")
    return Drop(d=d, theta=theta, model=model)


def dl_coefficients(scenario: Scenario, drop: Drop, codebook: Codebook) -> np.ndarray:
    """(K, S) matrix of DL channel coefficients."""
    return channel_coefficient(DOWNLINK, codebook.phases, scenario.carrier, scenario.panel,
                               scenario.budget, scenario.bs.d, drop.d,
                               scenario.bs.theta, drop.theta)


def ul_coefficients(scenario: Scenario, drop: Drop, codebook: Codebook) -> np.ndarray:
    """(K, S) matrix of UL channel coefficients."""
    return channel_coefficient(UPLINK, codebook.phases, scenario.carrier, scenario.panel,
                               scenario.budget, scenario.bs.d, drop.d,
                               scenario.bs.theta, drop.theta)


def run_training(scenario: Scenario, drop: Drop, codebook: Codebook,
                 mode: str = "ideal", rng: np.random.Generator | None = None) -> np.ndarray:
    """Per-UE channel qualities xi_k(s), shape (K, S).

    ideal: the exact mean of the measured energy, L*(rho_b*|zeta|^2 + sigma2)
    (the noise floor is part of what a receiver measures, so it stays).
    noisy: one actual measurement per configuration with unit-power training
    symbols, ||sqrt(rho_b)*zeta*v + eta||^2.
    """
    b = scenario.budget
    z = dl_coefficients(scenario, drop, codebook)
    if mode == "ideal":
        return b.L * (b.rho_b * np.abs(z) ** 2 + b.sigma2)
    if mode == "noisy":
        if rng is None:
            raise ValueError("noisy training needs an rng")
        shape = z.shape + (b.L,)
        eta = rng.normal(0.0, np.sqrt(b.sigma2 / 2), shape) + 1j * rng.normal(0.0, np.sqrt(b.sigma2 / 2), shape)
        w = np.sqrt(b.rho_b) * z[..., None] + eta  # v = all-ones
        return (np.abs(w) ** 2).sum(axis=-1)
    raise ValueError(f"unknown training mode {mode!r}")


def _bernoulli_nonempty(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Per-row independent Bernoulli draws, redrawing a whole row while it
    comes out empty (keeps the conditional joint law intact)."""
    K, S = p.shape
    sel = rng.random((K, S)) < p
    idx = np.flatnonzero(~sel.any(axis=1))
    while idx.size:
        sel[idx] = rng.random((idx.size, S)) < p[idx]
        idx = idx[~sel[idx].any(axis=1)]
    return sel


def select_slots(policy: str, xi: np.ndarray, rng: np.random.Generator | None = None) -> np.ndarray:
    """Boolean (K, S) slot selection matrix for the given policy.

    scp: the single strongest slot (ties to the lowest index). carp: slot s
    joins with probability xi(s)/sum(xi), redrawn until nonempty. urp: same
    with flat probability 1/S.
    """
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    K, S = xi.shape
    if policy == SCP:
        sel = np.zeros((K, S), dtype=bool)
        sel[np.arange(K), np.argmax(xi, axis=1)] = True
        return sel
    if rng is None:
        raise ValueError(f"{policy} needs an rng")
    if policy == CARP:
        tot = xi.sum(axis=1, keepdims=True)
        if np.any(tot <= 0):
            raise ValueError("carp needs at least one positive quality per UE")
        p = xi / tot
    elif policy == URP:
        p = np.full((K, S), 1.0 / S)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    return _bernoulli_nonempty(p, rng)


@dataclass
class UplinkFrame:
    """Symbolic uplink frame: per slot a ledger {ue: sqrt(rho_k)*zeta} plus
    a noise-variance accumulator per slot (starts at sigma2)."""

    terms: list[dict[int, complex]]
    noise: np.ndarray
    L: int = 1


def build_uplink_frame(scenario: Scenario, drop: Drop, selections: np.ndarray,
                       codebook: Codebook) -> UplinkFrame:
    """Stack the selected packets into per-slot term ledgers."""
    selections = np.asarray(selections, dtype=bool)
    if selections.shape != (drop.K, codebook.S):
        raise ValueError("selections must cover all UEs and slots")
    z = ul_coefficients(scenario, drop, codebook)
    amp = np.sqrt(scenario.budget.rho_k)
    terms: list[dict[int, complex]] = [dict() for _ in range(codebook.S)]
    for k, s in zip(*np.nonzero(selections)):
        terms[int(s)][int(k)] = complex(amp * z[k, s])
    noise = np.full(codebook.S, scenario.budget.sigma2, dtype=float)
    return UplinkFrame(terms=terms, noise=noise, L=scenario.budget.L)


def phase_durations(S: int, T: float, T_config: float, include_training: bool = True) -> float:
    """Total protocol duration: S*(T + T_config) per phase, doubled when a
    training phase precedes the access phase."""
    if S < 1:
        raise ValueError("S must be >= 1")
    one = S * (T + T_config)
    return 2 * one if include_training else one
