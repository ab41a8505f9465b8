"""Acceptance criteria, one test each.

Every test times itself and fails past its budget.  The conftest hook prints
one ``ACCEPTANCE n PASS/FAIL`` line per criterion in the terminal summary.
"""
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from flexcycle.butterfly import ButterflySpec, build_bundle, sample_flex, verify_flex
from flexcycle.catalog import bipyramid, hexagonal_suspension, icosahedron, octahedron
from flexcycle.coloring import run_pipeline
from flexcycle.exact import Radical
from flexcycle.mobius import (
    INFINITY,
    OMEGA_INF,
    ExtendedDistance,
    ProjectivePoint,
    distance,
    embed,
    fin_contains,
    psi,
    sample_fin_point,
    sigma_project,
)
from flexcycle.polyhedron import Realization, dihedral_indicator, induced_lengths, spine_at
from flexcycle.zero_sum import edge_obstruction_report, scan_all_edges, zero_sum_assignment

import gen
from oracles import brute_force_signs, mixed_lengths

F = Fraction


@contextmanager
def budget(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f} s, budget {seconds} s"


@pytest.mark.acceptance(1, "Euclidean consistency on 1000 rational pairs, exact")
def test_euclidean_consistency():
    rng = random.Random(20261015)
    with budget(5):
        for _ in range(1000):
            u, v = gen.rational_triple(rng), gen.rational_triple(rng)
            want = -sum((a - b) ** 2 for a, b in zip(u, v)) / 2
            assert distance(embed(u), embed(v)) == ExtendedDistance.of(want)


@pytest.mark.acceptance(2, "extended distance: omega, distinct and equal directions, tangent slice")
def test_extended_distance_properties():
    rng = random.Random(2)
    with budget(10):
        for _ in range(100):
            assert distance(gen.finite_point(rng, gaussian=True), OMEGA_INF) == INFINITY

        done = 0
        while done < 500:
            a, b = gen.simple_infinite(rng), gen.simple_infinite(rng)
            if psi(a) != psi(b):
                assert distance(a, b) == INFINITY
                done += 1

        for i in range(200):
            d = gen.conic_point(rng)
            p = gen.finite_point(rng, gaussian=True)
            u = p.affine()
            r1 = 2 * (d[0] * u[0] + d[1] * u[1] + d[2] * u[2]) if i % 2 == 0 else gen.scalar(rng)
            q1 = ProjectivePoint(d[0], d[1], d[2], r1, 0)
            q2 = q1
            while q2 == q1:
                q2 = gen.simple_infinite(rng, direction=d)
            d1, d2 = distance(q1, p), distance(q2, p)
            assert not (d1.is_undefined and d2.is_undefined)
            assert all(x.is_undefined or x.is_infinity for x in (d1, d2))

        for _ in range(500):
            p = gen.simple_infinite(rng)
            pivots = [k for k in range(3) if p.coords[k]]
            q1 = sample_fin_point(p, (gen.scalar(rng), gen.scalar(rng)), rng.choice(pivots))
            q2 = sample_fin_point(p, (gen.scalar(rng), gen.scalar(rng)), rng.choice(pivots))
            assert fin_contains(p, q1) and fin_contains(p, q2)
            gap = sigma_project(p, q1) - sigma_project(p, q2)
            assert distance(q1, q2) == ExtendedDistance.of(gap * gap / 2)


@pytest.mark.acceptance(3, "octahedron butterfly end to end: (1,2,3,4), (+,+,-,-)")
def test_octahedron_end_to_end():
    with budget(1):
        P = octahedron()
        spec = ButterflySpec(P, (1, 2, 3, 4), (1, 1, -1, -1), x_positions={1: 0, 2: 1, 3: 3, 4: 2})
        b = build_bundle(spec)
        cert = run_pipeline(P, b.lengths, b.limit)
    assert cert.cycle == (1, 2, 3, 4)
    assert cert.signs == (1, 1, -1, -1)
    assert cert.lengths == tuple(Radical({1: F(x)}) for x in (1, 2, 1, 2))
    assert cert.signed_sum().is_zero()


@pytest.mark.acceptance(4, "hexagonal suspension butterfly: zero-sum 6-cycle")
def test_hexagonal_end_to_end():
    with budget(1):
        P = hexagonal_suspension()
        assert (len(P.vertices), len(P.faces)) == (8, 12)
        spec = ButterflySpec(P, (1, 2, 3, 4, 5, 6), (1, 1, 1, -1, -1, -1))
        b = build_bundle(spec)
    cert = b.certificate
    assert cert.cycle == (1, 2, 3, 4, 5, 6)
    assert cert.signs in ((1, 1, 1, -1, -1, -1), (-1, -1, -1, 1, 1, 1))
    assert cert.signed_sum().is_zero()


@pytest.mark.acceptance(5, "zero-sum search agrees with brute force on 500 vectors, k <= 12")
def test_zero_sum_oracle():
    rng = random.Random(5)
    found = 0
    with budget(30):
        for _ in range(500):
            lens = mixed_lengths(rng, 12)
            want = brute_force_signs(lens)
            assert zero_sum_assignment(lens) == want
            found += want is not None
    assert 100 < found < 500


def _butterfly_instances():
    rng = random.Random(6)
    out = []
    for n in range(4, 9):
        for _ in range(3):
            signs = [rng.choice((1, -1)) for _ in range(n)]
            signs[rng.randrange(1, n)] = -signs[0]
            out.append((bipyramid(n), tuple(range(1, n + 1)), tuple(signs)))
    ico = icosahedron()
    # link of the edge {1, 2}: separates {1, 2} from {8, 9, 10, 12}
    hexagon = (3, 4, 5, 6, 11, 7)
    for cyc in ((2, 3, 4, 5, 6), (7, 8, 9, 10, 11), hexagon, (2, 3, 4, 5, 6), hexagon):
        signs = [rng.choice((1, -1)) for _ in cyc]
        signs[rng.randrange(1, len(cyc))] = -signs[0]
        out.append((ico, cyc, tuple(signs)))
    return out


@pytest.mark.acceptance(6, "20 butterfly instances: witness on every S edge with varying angle")
def test_contrapositive_consistency():
    instances = _butterfly_instances()
    assert len(instances) == 20
    slopes = (0, 1, 3, F(-1, 2))
    with budget(60):
        for seed, (P, cyc, signs) in enumerate(instances):
            spec = ButterflySpec(P, cyc, signs, seed=seed)
            b = build_bundle(spec, slopes)
            reports = scan_all_edges(P, b.lengths)
            varying = 0
            for j in range(len(cyc)):
                e = tuple(sorted((cyc[j], cyc[(j + 1) % len(cyc)])))
                sp = spine_at(P, e)
                values = {dihedral_indicator(s.realization, sp) for s in b.samples}
                if len(values) > 1:
                    varying += 1
                    w = reports[e].witness
                    assert w is not None, f"instance {seed}: no witness at {e}"
                    assert w.signed_sum().is_zero()
            assert varying > 0


def line_symmetric_octahedron():
    """Octahedron invariant under the half-turn (x, y, z) -> (-x, -y, z).

    The half-turn swaps 1<->3, 2<->4 and 5<->6, which is a combinatorial
    automorphism of the octahedron.
    """
    half = {1: (F(2), F(1), F(1, 2)), 2: (F(-1), F(3), F(-1, 3)), 5: (F(1, 4), F(-2), F(5, 2))}
    pos = dict(half)
    for v, w in ((1, 3), (2, 4), (5, 6)):
        x, y, z = half[v]
        pos[w] = (-x, -y, z)
    return Realization(pos)


@pytest.mark.acceptance(7, "line-symmetric octahedron: equator witness (+,+,-,-)")
def test_line_symmetric_octahedron():
    P = octahedron()
    rho = line_symmetric_octahedron()
    lam = induced_lengths(P, rho)
    # hand-derived squared lengths
    assert lam.squared_of(1, 2) == lam.squared_of(3, 4) == F(493, 36)
    assert lam.squared_of(2, 3) == lam.squared_of(1, 4) == F(637, 36)
    assert lam.of(2, 3) == Radical({13: F(7, 6)})
    rep = edge_obstruction_report(P, lam, spine_at(P, (1, 2)))
    assert rep.witness is not None
    assert rep.witness.cycle == (1, 2, 3, 4)
    assert rep.witness.signs == (1, 1, -1, -1)
    assert rep.witness.signed_sum().is_zero()


@pytest.mark.acceptance(8, "8 rational-slope flex samples: exact lengths, varying angle")
def test_flex_verification():
    with budget(1):
        P = octahedron()
        spec = ButterflySpec(P, (1, 2, 3, 4), (1, -1, 1, -1), seed=8)
        b = build_bundle(spec)
        slopes = (0, 1, 2, F(1, 2), 3, F(-1, 3), F(5, 7), -4)
        rot = b.rotating_component
        samples = [sample_flex(spec, b.realization, {0: 0, 1: 0, rot: t}) for t in slopes]
        rep = verify_flex(P, samples, b.limit.spine)
    assert len(samples) == 8
    ref = induced_lengths(P, samples[0].realization).squared
    assert all(induced_lengths(P, s.realization).squared == ref for s in samples)
    assert rep.distinct_indicators >= 2


@pytest.mark.acceptance(9, "generic octahedron: 12 witness-free exhausted reports")
def test_negative_control():
    rng = random.Random(9)
    P = octahedron()
    with budget(5):
        rho = Realization({v: gen.rational_triple(rng) for v in P.vertices})
        reports = scan_all_edges(P, induced_lengths(P, rho))
    assert len(reports) == 12
    for e, rep in reports.items():
        assert rep.witness is None, f"unexpected witness at {e}"
        assert rep.exhausted
