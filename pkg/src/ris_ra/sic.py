"""Successive interference cancellation over the slot/UE access graph.

The receiver repeatedly looks for a singleton slot (exactly one live
packet), attempts to decode it, and on success subtracts that UE's
contribution from its other slots.  Subtraction is symbolic: each slot
carries a ledger of complex terms plus a noise accumulator, and the
subtraction moves the whole decoded-slot ledger (negated) into the
target slot, so imperfect cancellation shows up as residual terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .protocol import UplinkFrame


@dataclass
class AccessGraph:
    """Bipartite UE/slot membership; mirrors a boolean selection matrix."""

    n_ues: int
    n_slots: int
    members: list[set[int]]   # per slot: UEs with a live edge
    slots_of: list[set[int]]  # per UE: slots it transmitted in


def build_access_graph(selections: np.ndarray) -> AccessGraph:
    sel = np.asarray(selections, dtype=bool)
    if sel.ndim != 2:
        raise ValueError("selections must be a (K, S) boolean matrix")
    K, S = sel.shape
    members = [set(np.flatnonzero(sel[:, s]).tolist()) for s in range(S)]
    slots_of = [set(np.flatnonzero(sel[k]).tolist()) for k in range(K)]
    return AccessGraph(n_ues=K, n_slots=S, members=members, slots_of=slots_of)


@dataclass
class TraceStep:
    iteration: int
    slot: int
    ue: int
    sinr: float
    success: bool


@dataclass
class Resolution:
    sa: int
    decoded: list[int]
    trace: list[TraceStep]
    ledger: list[dict[int, complex]] = field(default_factory=list)
    noise: np.ndarray = field(default_factory=lambda: np.zeros(0))


def resolve(graph: AccessGraph, frame: UplinkFrame, gamma_th: float,
            keep_failed_edges: bool = False) -> Resolution:
    """Run SIC to exhaustion and return the outcome.

    Each iteration picks the lowest-index singleton slot, computes the
    SINR of its lone packet against the slot's residual ledger and noise
    accumulator, and compares against gamma_th.  Success: count it,
    subtract the decoded slot's entire ledger from every other slot of
    that UE (noise accumulators add).  Failure: the packet is lost; by
    default its copies elsewhere are abandoned too, with
    keep_failed_edges=True they stay and keep blocking their slots.
    The processed UE and slot always leave the graph, so the loop runs
    at most n_slots iterations.
    """
    if len(frame.terms) != graph.n_slots or len(frame.noise) != graph.n_slots:
        raise ValueError("frame does not match the access graph")
    for s in range(graph.n_slots):
        if not graph.members[s] <= set(frame.terms[s]):
            raise ValueError(f"slot {s} has edges without frame terms")

    ledger = [dict(t) for t in frame.terms]
    noise = np.asarray(frame.noise, dtype=float).copy()
    members = [set(m) for m in graph.members]
    slots_of = [set(s) for s in graph.slots_of]
    active_slots = set(range(graph.n_slots))
    active_ues = set(range(graph.n_ues))

    decoded: list[int] = []
    trace: list[TraceStep] = []
    iteration = 0
    while True:
        cands = [s for s in sorted(active_slots)
                 if len(members[s]) == 1 and next(iter(members[s])) in active_ues]
        if not cands:
            break
        s0 = cands[0]
        k0 = next(iter(members[s0]))
        power = abs(ledger[s0][k0]) ** 2
        interference = sum(abs(v) ** 2 for j, v in ledger[s0].items() if j != k0)
        sinr = power / (noise[s0] + interference)
        ok = bool(sinr >= gamma_th)
        iteration += 1
        trace.append(TraceStep(iteration, s0, k0, float(sinr), ok))
        if ok:
            decoded.append(k0)
            for s in sorted(slots_of[k0] - {s0}):
                # a slot another copy lives in cannot have been retired yet:
                # retired slots were singletons not containing k0
                if s not in active_slots:
                    raise RuntimeError("decoded UE has an edge into a retired slot")
                for j, v in ledger[s0].items():
                    ledger[s][j] = ledger[s].get(j, 0j) - v
                noise[s] += noise[s0]
                members[s].discard(k0)
        elif not keep_failed_edges:
            for s in slots_of[k0]:
                if s != s0:
                    members[s].discard(k0)
        active_ues.discard(k0)
        active_slots.discard(s0)
        members[s0] = set()

    return Resolution(sa=len(decoded), decoded=decoded, trace=trace,
                      ledger=ledger, noise=noise)
