"""Zero-sum cycle scanner.

If a flex changes the dihedral angle at an edge, some induced cycle through
that edge (avoiding both apexes) carries a +/-1 assignment whose signed length
sum is zero.  Read backwards this is an obstruction: an edge for which no such
cycle exists keeps its dihedral angle under every flex.  This module searches
for those cycles exactly.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .coloring import SignedCycle
from .exact import Radical
from .polyhedron import EdgeLengths, Polyhedron, SpineEdge, cycle_edges, spine_at

MITM_THRESHOLD = 24


def _induced_cycles(P: Polyhedron, through_edge, forbidden, max_len):
    w1, w2 = through_edge
    forbidden = frozenset(forbidden)
    if w1 in forbidden or w2 in forbidden or not P.has_edge(w1, w2):
        return [], False
    cycles = []
    truncated = False
    path = [w1, w2]
    on_path = {w1, w2}

    def extend(last):
        nonlocal truncated
        for v in sorted(P.neighbors(last)):
            if v in on_path or v in forbidden:
                continue
            nb = P.neighbors(v)
            if any(u in nb for u in path[1:-1]):
                continue
            if w1 in nb:
                cycles.append(tuple(path) + (v,))
                continue
            if len(path) + 2 > max_len:
                truncated = True
                continue
            path.append(v)
            on_path.add(v)
            extend(v)
            path.pop()
            on_path.discard(v)

    extend(w2)
    cycles.sort(key=lambda c: (len(c), c))
    return cycles, truncated


def enumerate_induced_cycles(
    P: Polyhedron, through_edge, forbidden: Iterable[int] = (), max_len: Optional[int] = None
) -> list:
    """Induced cycles through ``through_edge = (w1, w2)`` avoiding ``forbidden``.

    Each cycle is listed once, as the vertex sequence starting ``w1, w2``.
    The result is sorted by length, then lexicographically.
    """
    if max_len is None:
        max_len = len(P.vertices)
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    return _induced_cycles(P, through_edge, forbidden, max_len)[0]


def _integer_vectors(lengths: Sequence[Radical]):
    cores = sorted({core for r in lengths for core, _ in r.items()})
    index = {c: i for i, c in enumerate(cores)}
    scale = [1] * len(cores)
    for r in lengths:
        for core, coeff in r.items():
            i = index[core]
            scale[i] = scale[i] * coeff.denominator // math.gcd(scale[i], coeff.denominator)
    vecs = []
    for r in lengths:
        v = [0] * len(cores)
        for core, coeff in r.items():
            i = index[core]
            v[i] = int(coeff * scale[i])
        vecs.append(tuple(v))
    return vecs


def _direct(vecs):
    k, m = len(vecs), len(vecs[0])
    # rem[j][c]: largest |change| indices j.. can still make in coordinate c
    rem = [[0] * m for _ in range(k + 1)]
    for j in range(k - 1, -1, -1):
        rem[j] = [rem[j + 1][c] + abs(vecs[j][c]) for c in range(m)]
    signs = [0] * k

    def go(j, partial):
        if any(abs(partial[c]) > rem[j][c] for c in range(m)):
            return False
        if j == k:
            return True
        vj = vecs[j]
        for s in (1, -1):
            signs[j] = s
            if go(j + 1, [partial[c] + s * vj[c] for c in range(m)]):
                return True
        return False

    signs[0] = 1
    if go(1, list(vecs[0])):
        return tuple(signs)
    return None


def _signed_total(vecs, signs):
    m = len(vecs[0])
    acc = [0] * m
    for v, s in zip(vecs, signs):
        for c in range(m):
            acc[c] += s * v[c]
    return tuple(acc)


def _meet_in_the_middle(vecs):
    k = len(vecs)
    h = k // 2
    head, tail = vecs[:h], vecs[h:]
    best_tail = {}
    for signs in itertools.product((1, -1), repeat=len(tail)):
        best_tail.setdefault(_signed_total(tail, signs), signs)
    for rest in itertools.product((1, -1), repeat=h - 1):
        signs = (1,) + rest
        need = tuple(-x for x in _signed_total(head, signs))
        if need in best_tail:
            return signs + best_tail[need]
    return None


def zero_sum_assignment(lengths: Sequence[Radical]) -> Optional[tuple]:
    """Signs making ``sum(sign * length)`` vanish exactly, or ``None``.

    Coefficients are grouped by squarefree core and every group must cancel
    at once.  The answer is canonical: first sign ``+1``, then the
    lexicographically first vector with ``+1`` ordered before ``-1``.
    """
    if not lengths:
        raise ValueError("zero_sum_assignment needs at least one length")
    vecs = _integer_vectors(lengths)
    if not vecs[0]:
        # every length is zero
        return (1,) * len(lengths)
    if len(vecs) <= MITM_THRESHOLD:
        return _direct(vecs)
    return _meet_in_the_middle(vecs)


@dataclass(frozen=True)
class ObstructionReport:
    spine: SpineEdge
    witness: Optional[SignedCycle]
    cycles_examined: int
    exhausted: bool


def edge_obstruction_report(
    P: Polyhedron, lengths: EdgeLengths, spine: SpineEdge, max_len: Optional[int] = None
) -> ObstructionReport:
    if max_len is None:
        max_len = len(P.vertices)
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    cycles, truncated = _induced_cycles(
        P, (spine.w1, spine.w2), {spine.s, spine.n}, max_len
    )
    examined = 0
    for cyc in cycles:
        examined += 1
        lens = tuple(lengths.of(u, v) for u, v in cycle_edges(cyc))
        signs = zero_sum_assignment(lens)
        if signs is not None:
            return ObstructionReport(spine, SignedCycle(cyc, signs, lens), examined, not truncated)
    return ObstructionReport(spine, None, examined, not truncated)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FLEXCYCLE_THREADS", "1")))
    except ValueError:
        return 1


def scan_all_edges(
    P: Polyhedron,
    lengths: EdgeLengths,
    max_len: Optional[int] = None,
    workers: Optional[int] = None,
) -> dict:
    """One :class:`ObstructionReport` per edge, keyed and ordered by edge."""
    spines = [spine_at(P, e) for e in P.edges]
    workers = workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(
                pool.map(lambda sp: edge_obstruction_report(P, lengths, sp, max_len), spines)
            )
    else:
        reports = [edge_obstruction_report(P, lengths, sp, max_len) for sp in spines]
    return {sp.edge: rep for sp, rep in zip(spines, reports)}
