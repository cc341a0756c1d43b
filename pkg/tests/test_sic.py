import itertools

import numpy as np
import pytest

from ris_ra import UplinkFrame, build_access_graph, resolve
from oracles import peel_all_orders, peel_reversed

SIGMA2 = 1e-13


def frame_from_graph(masks, S, value=1e-6 + 0j):
    terms = [dict() for _ in range(S)]
    for k, mask in enumerate(masks):
        for s in range(S):
            if (mask >> s) & 1:
                terms[s][k] = value
    return UplinkFrame(terms=terms, noise=np.full(S, SIGMA2), L=1)


def graph_from_masks(masks, S):
    sel = np.zeros((len(masks), S), dtype=bool)
    for k, mask in enumerate(masks):
        for s in range(S):
            sel[k, s] = bool((mask >> s) & 1)
    return build_access_graph(sel)


def test_build_access_graph_structure():
    sel = np.array([[1, 0, 1], [0, 1, 0], [0, 1, 1]], dtype=bool)
    g = build_access_graph(sel)
    assert g.n_ues == 3 and g.n_slots == 3
    assert g.members == [{0}, {1, 2}, {0, 2}]
    assert g.slots_of == [{0, 2}, {1}, {1, 2}]
    with pytest.raises(ValueError):
        build_access_graph(np.ones(4, dtype=bool))


def test_lowest_index_singleton_first():
    # slots 0 and 2 are both singletons; slot 0 must be served first
    masks = [0b001, 0b100]
    res = resolve(graph_from_masks(masks, 3), frame_from_graph(masks, 3), 0.0)
    assert [t.slot for t in res.trace] == [0, 2]
    assert res.sa == 2
    assert res.decoded == [0, 1]


def test_single_packet_sinr():
    masks = [0b01]
    c = 3e-7 + 4e-7j
    frame = frame_from_graph(masks, 2, value=c)
    res = resolve(graph_from_masks(masks, 2), frame, gamma_th=1.0)
    assert res.sa == 1
    assert res.trace[0].sinr == pytest.approx(abs(c) ** 2 / SIGMA2, rel=1e-12)


def test_collision_without_singleton_deadlocks():
    masks = [0b11, 0b11]
    res = resolve(graph_from_masks(masks, 2), frame_from_graph(masks, 2), 0.0)
    assert res.sa == 0
    assert res.trace == []


def test_subtraction_enables_second_decode():
    # UE0 alone in slot 1, shares slot 0 with UE1; after decoding UE0 the
    # subtraction frees slot 0 for UE1
    masks = [0b11, 0b01]
    res = resolve(graph_from_masks(masks, 2), frame_from_graph(masks, 2), 0.0)
    assert res.sa == 2
    assert [t.slot for t in res.trace] == [1, 0]
    assert res.decoded == [0, 1]


def test_ledger_after_subtraction():
    # decoded copy differs from the one in the shared slot: the residual
    # difference must stay in the ledger and the noise must double
    c00, c01, c10 = 2e-6 + 1e-6j, 1.5e-6 - 0.5e-6j, 1e-6 + 0j
    terms = [{0: c00, 1: c10}, {0: c01}]
    frame = UplinkFrame(terms=terms, noise=np.full(2, SIGMA2), L=1)
    g = graph_from_masks([0b11, 0b01], 2)
    res = resolve(g, frame, gamma_th=0.0)
    assert res.sa == 2
    assert res.ledger[0][0] == pytest.approx(c00 - c01, rel=1e-15)
    assert res.ledger[0][1] == pytest.approx(c10, rel=1e-15)
    assert res.noise[0] == pytest.approx(2 * SIGMA2, rel=1e-15)
    # second decode fought the residual
    expect_sinr = abs(c10) ** 2 / (2 * SIGMA2 + abs(c00 - c01) ** 2)
    assert res.trace[1].sinr == pytest.approx(expect_sinr, rel=1e-12)


def test_failed_packet_copies_removed_by_default():
    # UE0 fails its singleton; its copy in slot 1 is then abandoned, so
    # UE1 gets a clean singleton there (interference term remains, edge not)
    weak, strong = 1e-10 + 0j, 1e-5 + 0j
    terms = [{0: weak}, {0: weak, 1: strong}]
    frame = UplinkFrame(terms=terms, noise=np.full(2, SIGMA2), L=1)
    g = graph_from_masks([0b11, 0b10], 2)
    res = resolve(g, frame, gamma_th=1.0)
    assert res.sa == 1
    assert res.decoded == [1]
    verdicts = [(t.slot, t.success) for t in res.trace]
    assert verdicts == [(0, False), (1, True)]
    # the failed copy still interferes with UE1
    assert res.trace[1].sinr == pytest.approx(
        abs(strong) ** 2 / (SIGMA2 + abs(weak) ** 2), rel=1e-12)


def test_failed_packet_copies_kept_blocks_slot():
    weak, strong = 1e-10 + 0j, 1e-5 + 0j
    terms = [{0: weak}, {0: weak, 1: strong}]
    frame = UplinkFrame(terms=terms, noise=np.full(2, SIGMA2), L=1)
    g = graph_from_masks([0b11, 0b10], 2)
    res = resolve(g, frame, gamma_th=1.0, keep_failed_edges=True)
    assert res.sa == 0
    assert [t.slot for t in res.trace] == [0]


def test_threshold_blocks_decode():
    masks = [0b1]
    frame = frame_from_graph(masks, 1, value=1e-9 + 0j)
    snr = abs(1e-9) ** 2 / SIGMA2
    ok = resolve(graph_from_masks(masks, 1), frame, gamma_th=snr * 0.99)
    no = resolve(graph_from_masks(masks, 1), frame, gamma_th=snr * 1.01)
    assert ok.sa == 1 and no.sa == 0


def test_inconsistent_frame_rejected():
    g = graph_from_masks([0b1], 1)
    with pytest.raises(ValueError):
        resolve(g, UplinkFrame(terms=[{}], noise=np.full(1, SIGMA2)), 0.0)
    with pytest.raises(ValueError):
        resolve(g, frame_from_graph([0b1], 2), 0.0)


def test_inputs_not_mutated():
    masks = [0b11, 0b01]
    g = graph_from_masks(masks, 2)
    frame = frame_from_graph(masks, 2)
    before_members = [set(m) for m in g.members]
    before_terms = [dict(t) for t in frame.terms]
    resolve(g, frame, 0.0)
    assert g.members == before_members
    assert frame.terms == before_terms
    assert np.all(frame.noise == SIGMA2)


def test_resolution_bounds_random_graphs():
    rng = np.random.default_rng(21)
    for _ in range(300):
        K = int(rng.integers(1, 9))
        S = int(rng.integers(1, 7))
        sel = rng.random((K, S)) < 0.4
        masks = [int(sum(1 << s for s in range(S) if sel[k, s])) for k in range(K)]
        res = resolve(graph_from_masks(masks, S), frame_from_graph(masks, S), 0.0)
        assert res.sa <= min(K, S)
        assert len(set(res.decoded)) == len(res.decoded)
        assert len(res.trace) <= S


def test_always_decode_order_independent_small():
    # every choice order yields the same count on every graph up to 3x4
    for K, S in itertools.product(range(1, 4), range(1, 5)):
        for masks in itertools.product(range(1 << S), repeat=K):
            lo, hi = peel_all_orders(masks, S)
            assert lo == hi
            res = resolve(graph_from_masks(masks, S), frame_from_graph(masks, S), 0.0)
            assert res.sa == lo


def test_always_decode_matches_reverse_oracle_sampled():
    rng = np.random.default_rng(33)
    for _ in range(500):
        K = int(rng.integers(1, 5))
        S = int(rng.integers(1, 5))
        masks = tuple(int(m) for m in rng.integers(0, 1 << S, K))
        res = resolve(graph_from_masks(masks, S), frame_from_graph(masks, S), 0.0)
        assert res.sa == peel_reversed(masks, S)
