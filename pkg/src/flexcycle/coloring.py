"""From a limit configuration to a zero-sum cycle certificate.

A limit configuration sends every vertex to a point of the Moebius quadric,
with the spine edge ``{w1, w2}`` and the apex ``n`` finite and the other apex
``s`` at a simple infinite point.  The pipeline colors vertices, walks around
the cycle of mixed red/blue triangles through the spine face, extracts a
shortest (hence chordless) red cycle through the spine edge and reads off
signs from the one-dimensional coordinate ``sigma`` on the tangent slice of
``s``.  Each property the argument relies on is checked, not assumed.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import (
    DegreeViolation,
    FlexCycleError,
    InfinityOnEdge,
    InvalidLimitConfiguration,
    LemmaViolation,
    No3Violation,
    NonRealTelescope,
    SpineRepeated,
    SpineTriangleCycle,
    WrongFiniteValue,
)
from .exact import I, Radical, format_rational, radical_from_square, radical_signed_sum
from .mobius import (
    PointClass,
    ProjectivePoint,
    classify,
    distance,
    fin_contains,
    psi,
    sigma_project,
)
from .polyhedron import (
    EdgeLengths,
    Polyhedron,
    SpineEdge,
    cycle_edges,
    edge_key,
    is_induced_cycle,
)


@dataclass(frozen=True)
class LimitConfiguration:
    points: Mapping  # vertex -> ProjectivePoint
    spine: SpineEdge

    def __post_init__(self):
        pts = dict(sorted(self.points.items()))
        for v, p in pts.items():
            if classify(p) is PointClass.OFF_QUADRIC:
                raise InvalidLimitConfiguration(f"vertex {v} maps off the quadric: {p!r}")
        sp = self.spine
        for v in (sp.w1, sp.w2, sp.s, sp.n):
            if v not in pts:
                raise InvalidLimitConfiguration(f"spine vertex {v} has no image")
        object.__setattr__(self, "points", pts)

    def __getitem__(self, v) -> ProjectivePoint:
        return self.points[v]


@dataclass(frozen=True)
class EdgeStatus:
    edge: tuple
    kind: str  # "value" or "undefined"


@dataclass(frozen=True)
class ValidationReport:
    statuses: tuple  # EdgeStatus, by edge

    @property
    def counts(self) -> dict:
        out = {"value": 0, "undefined": 0}
        for st in self.statuses:
            out[st.kind] += 1
        return out


def validate_limit_configuration(
    P: Polyhedron, lengths: EdgeLengths, cfg: LimitConfiguration
) -> ValidationReport:
    """Check that ``cfg`` is compatible with being a limit of realizations with ``lengths``.

    On every edge the extended distance must be undefined or equal to
    ``-squared/2``; an infinite distance certifies that ``cfg`` is no such
    limit.
    """
    missing = [v for v in P.vertices if v not in cfg.points]
    if missing:
        raise InvalidLimitConfiguration(f"vertices without image: {missing}")
    statuses = []
    for u, v in P.edges:
        d = distance(cfg[u], cfg[v])
        if d.is_infinity:
            raise InfinityOnEdge((u, v))
        if d.is_value:
            expected = -lengths.squared_of(u, v) / 2
            if d.value != expected:
                raise WrongFiniteValue(
                    (u, v),
                    f"distance on edge {(u, v)} is {d.value!r}, expected {format_rational(expected)}",
                )
            statuses.append(EdgeStatus((u, v), "value"))
        else:
            statuses.append(EdgeStatus((u, v), "undefined"))

    sp = cfg.spine
    try:
        sp.check(P)
    except FlexCycleError as exc:
        raise InvalidLimitConfiguration(str(exc)) from None
    for v in (sp.w1, sp.w2, sp.n):
        if classify(cfg[v]) is not PointClass.FINITE:
            raise InvalidLimitConfiguration(f"spine vertex {v} must map to a finite point")
    if classify(cfg[sp.s]) is not PointClass.SIMPLE_INFINITE:
        raise InvalidLimitConfiguration(f"apex s={sp.s} must map to a simple infinite point")
    return ValidationReport(tuple(statuses))


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"
    GOLD = "gold"


@dataclass(frozen=True)
class VertexColoring:
    colors: Mapping  # vertex -> Color

    def __getitem__(self, v) -> Color:
        return self.colors[v]

    def of(self, color: Color) -> list:
        return [v for v, c in self.colors.items() if c is color]


def color_vertices(cfg: LimitConfiguration) -> VertexColoring:
    target = psi(cfg[cfg.spine.s])
    colors = {}
    for v, p in cfg.points.items():
        kind = classify(p)
        if kind is PointClass.FINITE:
            colors[v] = Color.RED
        elif kind is PointClass.SIMPLE_INFINITE and psi(p) == target:
            colors[v] = Color.BLUE
        else:
            colors[v] = Color.GOLD
    return VertexColoring(colors)


@dataclass(frozen=True)
class No3Report:
    passed: bool
    witness: Optional[tuple] = None  # (red, gold, blue) path


def check_no3(P: Polyhedron, coloring: VertexColoring) -> No3Report:
    for w in sorted(coloring.of(Color.GOLD)):
        reds = sorted(u for u in P.neighbors(w) if coloring[u] is Color.RED)
        blues = sorted(u for u in P.neighbors(w) if coloring[u] is Color.BLUE)
        if reds and blues:
            return No3Report(False, (reds[0], w, blues[0]))
    return No3Report(True)


@dataclass(frozen=True)
class TriangleCycleGraph:
    nodes: tuple  # faces
    adjacency: Mapping  # face -> tuple of faces
    coloring: VertexColoring = field(repr=False)


def _mixed(face, coloring) -> bool:
    cs = {coloring[v] for v in face}
    return cs == {Color.RED, Color.BLUE}


def _bichromatic_edges(face, coloring) -> list:
    a, b, c = face
    return [e for e in ((a, b), (a, c), (b, c)) if coloring[e[0]] is not coloring[e[1]]]


def mixed_triangle_graph(
    P: Polyhedron, coloring: VertexColoring, spine: Optional[SpineEdge] = None
) -> TriangleCycleGraph:
    nodes = tuple(f for f in P.faces if _mixed(f, coloring))
    node_set = set(nodes)
    adjacency = {}
    for f in nodes:
        nbrs = []
        for e in _bichromatic_edges(f, coloring):
            for g in P.edge_faces[e]:
                if g != f and g in node_set:
                    nbrs.append(g)
        if len(nbrs) != 2:
            raise DegreeViolation(f"mixed triangle {f} has degree {len(nbrs)} in G_T")
        adjacency[f] = tuple(sorted(nbrs))
    if spine is not None:
        s_face = tuple(sorted((spine.w1, spine.w2, spine.s)))
        n_face = tuple(sorted((spine.w1, spine.w2, spine.n)))
        if s_face not in node_set:
            raise InvalidLimitConfiguration(f"spine face {s_face} is not a mixed triangle")
        if n_face in node_set:
            raise InvalidLimitConfiguration(f"face {n_face} must not be a mixed triangle")
    return TriangleCycleGraph(nodes, adjacency, coloring)


def _other_face(P, edge, face):
    a, b = P.edge_faces[edge_key(*edge)]
    return b if a == face else a


def _closed_walk(seq) -> tuple:
    walk = [seq[0]]
    for v in seq[1:]:
        if v != walk[-1]:
            walk.append(v)
    return tuple(walk)


def extract_walks(P: Polyhedron, graph: TriangleCycleGraph, spine: SpineEdge) -> tuple:
    """Red and blue closed walks of the ``G_T`` cycle through the spine face.

    The red walk starts ``w1, w2`` and ends back at ``w1``; the blue walk
    starts and ends at ``s``.
    """
    coloring = graph.coloring
    start = tuple(sorted((spine.w1, spine.w2, spine.s)))
    entry = edge_key(spine.w1, spine.s)
    red, blue = [spine.w1], [spine.s]
    face = start
    for _ in range(len(graph.nodes) + 1):
        exit_ = next(e for e in _bichromatic_edges(face, coloring) if edge_key(*e) != entry)
        for v in exit_:
            (red if coloring[v] is Color.RED else blue).append(v)
        nxt = _other_face(P, exit_, face)
        if nxt not in graph.adjacency:
            raise DegreeViolation(f"walk left G_T at face {nxt}")
        face, entry = nxt, edge_key(*exit_)
        if face == start:
            break
    else:
        raise DegreeViolation("triangle walk through the spine face does not close")
    return _closed_walk(red), _closed_walk(blue)


@dataclass(frozen=True)
class WalkReport:
    blue_vertices: tuple
    red_vertices: tuple


def verify_walk_lemmas(cfg: LimitConfiguration, red_walk, blue_walk) -> WalkReport:
    ps = cfg[cfg.spine.s]
    for v in blue_walk:
        if cfg[v] != ps:
            raise LemmaViolation(v, f"blue vertex {v} maps to {cfg[v]!r}, not to s's image {ps!r}")
    for v in red_walk:
        if not fin_contains(ps, cfg[v]):
            raise LemmaViolation(v, f"red vertex {v} is not in the tangent slice of s")
    return WalkReport(tuple(sorted(set(blue_walk))), tuple(sorted(set(red_walk))))


def induced_red_cycle(P: Polyhedron, red_walk, spine: SpineEdge) -> tuple:
    """Shortest cycle through ``{w1, w2}`` on the red-walk vertices.

    Minimality makes it chordless.  Among shortest ones the lexicographically
    smallest sequence starting ``w1, w2`` is returned.
    """
    w1, w2 = spine.w1, spine.w2
    key = edge_key(w1, w2)
    hits = sum(1 for a, b in zip(red_walk, red_walk[1:]) if edge_key(a, b) == key)
    if hits != 1:
        raise SpineRepeated(f"red walk traverses the spine edge {hits} times")
    allowed = set(red_walk)

    def nbrs(v):
        return sorted(
            u for u in P.neighbors(v) if u in allowed and edge_key(u, v) != key
        )

    dist = {w1: 0}
    queue = deque([w1])
    while queue:
        v = queue.popleft()
        for u in nbrs(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    if w2 not in dist:
        raise SpineRepeated("no red path closes the spine edge")
    cycle = [w1, w2]
    cur = w2
    while dist[cur] > 1:
        cur = next(u for u in nbrs(cur) if dist.get(u) == dist[cur] - 1)
        cycle.append(cur)
    return tuple(cycle)


@dataclass(frozen=True)
class SignedCycle:
    cycle: tuple
    signs: tuple
    lengths: tuple  # Radical per edge (cycle[j], cycle[j+1])

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "lengths", tuple(self.lengths))
        if not (len(self.cycle) == len(self.signs) == len(self.lengths)):
            raise ValueError("cycle, signs and lengths must have equal size")

    @property
    def edges(self) -> list:
        return cycle_edges(self.cycle)

    @property
    def lengths_squared(self) -> tuple:
        return tuple(r.square() for r in self.lengths)

    def signed_sum(self) -> Radical:
        return radical_signed_sum(self.lengths, self.signs)


def derive_signed_cycle(
    cfg: LimitConfiguration, lengths: EdgeLengths, cycle: Sequence[int]
) -> SignedCycle:
    """Signs from ``eta_j * lambda_j = i*(sigma_j - sigma_{j+1})``; the sum telescopes."""
    ps = cfg[cfg.spine.s]
    sig = [sigma_project(ps, cfg[v]) for v in cycle]
    signs, lens = [], []
    k = len(cycle)
    for j in range(k):
        u, v = cycle[j], cycle[(j + 1) % k]
        delta = I * (sig[j] - sig[(j + 1) % k])
        if not delta.is_real():
            raise NonRealTelescope(f"i*(sigma_u - sigma_v) is not real on edge {(u, v)}")
        if delta.re * delta.re != lengths.squared_of(u, v):
            raise NonRealTelescope(
                f"|i*(sigma_u - sigma_v)| differs from the length of edge {(u, v)}"
            )
        signs.append(1 if delta.re > 0 else -1)
        lens.append(radical_from_square(lengths.squared_of(u, v)))
    out = SignedCycle(tuple(cycle), tuple(signs), tuple(lens))
    if not out.signed_sum().is_zero():
        raise NonRealTelescope("signed sum does not vanish")
    return out


@dataclass(frozen=True)
class PipelineTrace:
    validation: ValidationReport
    coloring: VertexColoring
    graph: TriangleCycleGraph
    red_walk: tuple
    blue_walk: tuple
    cycle: tuple
    certificate: SignedCycle


def _staged(stage, fn, *args):
    try:
        return fn(*args)
    except FlexCycleError as exc:
        if exc.stage is None:
            exc.stage = stage
        raise


def trace_pipeline(P: Polyhedron, lengths: EdgeLengths, cfg: LimitConfiguration) -> PipelineTrace:
    spine = cfg.spine
    report = _staged("validate", validate_limit_configuration, P, lengths, cfg)
    coloring = _staged("color", color_vertices, cfg)
    no3 = check_no3(P, coloring)
    if not no3.passed:
        exc = No3Violation(f"gold vertex between red and blue: path {no3.witness}")
        exc.stage = "no3"
        raise exc
    graph = _staged("mixed_triangles", mixed_triangle_graph, P, coloring, spine)
    red, blue = _staged("walks", extract_walks, P, graph, spine)
    _staged("walk_lemmas", verify_walk_lemmas, cfg, red, blue)
    cycle = _staged("red_cycle", induced_red_cycle, P, red, spine)
    if spine.n in cycle:
        exc = SpineTriangleCycle(
            f"red cycle {cycle} passes through n={spine.n}; w1, w2, n would be collinear"
        )
        exc.stage = "red_cycle"
        raise exc
    cert = _staged("signed_cycle", derive_signed_cycle, cfg, lengths, cycle)
    assert spine.s not in cert.cycle and is_induced_cycle(P, cert.cycle)
    return PipelineTrace(report, coloring, graph, red, blue, cycle, cert)


def run_pipeline(P: Polyhedron, lengths: EdgeLengths, cfg: LimitConfiguration) -> SignedCycle:
    return trace_pipeline(P, lengths, cfg).certificate
