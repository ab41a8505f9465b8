import random
from fractions import Fraction

import networkx as nx
import pytest

from flexcycle import zero_sum
from flexcycle.butterfly import ButterflySpec, construct_realization
from flexcycle.catalog import bipyramid, icosahedron, octahedron
from flexcycle.exact import Radical, radical_signed_sum
from flexcycle.polyhedron import EdgeLengths, Realization, SpineEdge, induced_lengths, is_induced_cycle
from flexcycle.zero_sum import (
    edge_obstruction_report,
    enumerate_induced_cycles,
    scan_all_edges,
    zero_sum_assignment,
)

import gen
from oracles import brute_force_signs, mixed_lengths, random_lengths

F = Fraction


def R(q, core=1):
    return Radical({core: F(q)})


def equator_lengths(P, a, b, other=F(5)):
    sq = {e: other for e in P.edges}
    sq.update({(1, 2): a, (3, 4): a, (2, 3): b, (1, 4): b})
    return EdgeLengths.from_squared(sq)


def test_enumerate_examples(octa):
    assert enumerate_induced_cycles(octa, (1, 2), {5, 6}) == [(1, 2, 3, 4)]
    assert enumerate_induced_cycles(octa, (1, 5), {2, 4}) == [(1, 5, 3, 6)]
    assert enumerate_induced_cycles(octa, (1, 2), {5, 6}, max_len=3) == []


def test_enumerate_rejects_small_cap(octa):
    with pytest.raises(ValueError):
        enumerate_induced_cycles(octa, (1, 2), (), max_len=2)


def _oracle_cycles(P, w1, w2, forbidden):
    keep = [v for v in P.vertices if v not in forbidden]
    G = P_graph(P).subgraph(keep)
    out = []
    for cyc in nx.chordless_cycles(G):
        k = len(cyc)
        for seq in (cyc, cyc[::-1]):
            for r in range(k):
                rot = tuple(seq[r:] + seq[:r])
                if rot[:2] == (w1, w2):
                    out.append(rot)
    return sorted(set(out), key=lambda c: (len(c), c))


def P_graph(P):
    return nx.Graph(list(P.edges))


@pytest.mark.parametrize("P", [octahedron(), bipyramid(6), icosahedron()], ids=["octa", "hexa", "ico"])
def test_enumeration_matches_networkx(P):
    for w1, w2 in P.edges:
        for a, b in ((w1, w2), (w2, w1)):
            s, n = (x for x in P.vertices if P.has_edge(x, a) and P.has_edge(x, b))
            got = enumerate_induced_cycles(P, (a, b), {s, n})
            assert got == _oracle_cycles(P, a, b, {s, n})
            assert all(is_induced_cycle(P, c) for c in got)


def test_assignment_examples():
    assert zero_sum_assignment([R(1), R(2), R(1), R(2)]) == (1, 1, -1, -1)
    assert zero_sum_assignment([R(1), R(1), R(3)]) is None
    assert zero_sum_assignment([R(1, 2), R(1, 2), R(2, 2)]) == (1, 1, -1)


def test_assignment_needs_input():
    with pytest.raises(ValueError):
        zero_sum_assignment([])


def test_oracle_equivalence_small():
    rng = random.Random(99)
    hits = 0
    for _ in range(150):
        lens = mixed_lengths(rng, 9)
        want = brute_force_signs(lens)
        assert zero_sum_assignment(lens) == want
        hits += want is not None
    assert hits > 50


def test_witness_reverifies():
    rng = random.Random(5)
    for _ in range(300):
        lens = random_lengths(rng, rng.randint(2, 10))
        signs = zero_sum_assignment(lens)
        if signs is not None:
            assert signs[0] == 1
            assert radical_signed_sum(lens, signs).is_zero()


def test_mitm_agrees_with_direct():
    rng = random.Random(17)
    for _ in range(200):
        k = rng.randint(2, 14)
        m = rng.randint(1, 3)
        vecs = [tuple(rng.randint(0, 4) for _ in range(m)) for _ in range(k)]
        if not any(any(v) for v in vecs):
            continue
        assert zero_sum._direct(vecs) == zero_sum._meet_in_the_middle(vecs)


def test_long_vector_uses_mitm():
    lens = [R(1)] * 26 + [R(2)] * 2
    signs = zero_sum_assignment(lens)
    assert signs is not None and len(signs) == 28
    assert radical_signed_sum(lens, signs).is_zero()
    assert zero_sum_assignment([R(1)] * 27) is None


def test_report_examples(octa):
    lam = equator_lengths(octa, F(1), F(4))
    rep = edge_obstruction_report(octa, lam, SpineEdge(1, 2, 5, 6))
    assert rep.witness.cycle == (1, 2, 3, 4)
    assert rep.witness.signs == (1, 1, -1, -1)
    assert rep.exhausted and rep.cycles_examined == 1


def test_generic_octahedron_has_no_witness(octa):
    rng = random.Random(2024)
    rho = Realization({v: gen.rational_triple(rng) for v in octa.vertices})
    reports = scan_all_edges(octa, induced_lengths(octa, rho))
    assert list(reports) == list(octa.edges)
    for rep in reports.values():
        assert rep.witness is None and rep.exhausted


def test_cap_truncation_flag(ico):
    lam = EdgeLengths.from_squared({e: 1 for e in ico.edges})
    rep = edge_obstruction_report(ico, lam, SpineEdge(2, 3, 1, 7), max_len=3)
    assert not rep.exhausted
    full = edge_obstruction_report(ico, lam, SpineEdge(2, 3, 1, 7))
    assert full.exhausted


def test_monotone_in_cap(ico):
    rng = random.Random(8)
    for _ in range(10):
        lam = EdgeLengths.from_squared({e: rng.choice([1, 4, 9]) for e in ico.edges})
        for e in ico.edges[:10]:
            sp = zero_sum.spine_at(ico, e)
            prev = None
            for cap in range(3, 13):
                w = edge_obstruction_report(ico, lam, sp, cap).witness
                if prev is not None:
                    assert w == prev
                prev = w or prev


def test_parallel_scan_matches_serial(ico):
    spec = ButterflySpec(ico, (2, 3, 4, 5, 6), (1, -1, 1, 1, -1), seed=4)
    lam = induced_lengths(ico, construct_realization(spec))
    assert scan_all_edges(ico, lam, workers=4) == scan_all_edges(ico, lam, workers=1)


def test_thread_count_from_env(monkeypatch):
    monkeypatch.setenv("FLEXCYCLE_THREADS", "3")
    assert zero_sum.default_workers() == 3
    monkeypatch.setenv("FLEXCYCLE_THREADS", "zero")
    assert zero_sum.default_workers() == 1
