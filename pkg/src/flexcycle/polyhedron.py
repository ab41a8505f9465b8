"""Triangular polyhedra, rational realizations and edge lengths.

A polyhedron here is purely combinatorial: a set of triangles in which every
edge lies in exactly two faces and whose 1-skeleton is connected.  Nothing is
assumed about embeddedness or orientability.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    CoincidentEndpoints,
    DegenerateFace,
    DegenerateTriangle,
    DisconnectedSkeleton,
    DuplicateFace,
    EdgeFaceCountViolation,
    NotACycle,
    NotAnEdge,
)
from .exact import Radical, as_rational, radical_from_square

Edge = tuple  # (u, v) with u < v
Point3 = tuple  # three Fractions


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Polyhedron:
    vertices: tuple
    faces: tuple  # sorted triples
    edges: tuple = field(compare=False)
    adjacency: Mapping = field(compare=False, repr=False)
    edge_faces: Mapping = field(compare=False, repr=False)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())


def validate_complex(vertices: Iterable[int], faces: Iterable[Sequence[int]]) -> Polyhedron:
    verts = sorted(set(vertices))
    vset = set(verts)
    seen = set()
    face_list = []
    for f in faces:
        f = tuple(f)
        if len(f) != 3 or len(set(f)) != 3:
            raise DegenerateFace(f"face {f} does not have three distinct vertices")
        missing = [v for v in f if v not in vset]
        if missing:
            raise DegenerateFace(f"face {f} uses unknown vertices {missing}")
        key = tuple(sorted(f))
        if key in seen:
            raise DuplicateFace(f"face {key} appears twice")
        seen.add(key)
        face_list.append(key)
    face_list.sort()

    edge_faces: dict = {}
    for f in face_list:
        a, b, c = f
        for e in ((a, b), (a, c), (b, c)):
            edge_faces.setdefault(e, []).append(f)
    for e, fs in edge_faces.items():
        if len(fs) != 2:
            raise EdgeFaceCountViolation(f"edge {e} lies in {len(fs)} face(s), expected 2")

    adjacency: dict = {v: set() for v in verts}
    for u, v in edge_faces:
        adjacency[u].add(v)
        adjacency[v].add(u)
    if not verts:
        raise DisconnectedSkeleton("polyhedron has no vertices")
    reached = _component(adjacency, verts[0], frozenset())
    if len(reached) != len(verts):
        raise DisconnectedSkeleton(
            f"1-skeleton is disconnected: {len(verts) - len(reached)} vertices unreachable"
        )
    return Polyhedron(
        vertices=tuple(verts),
        faces=tuple(face_list),
        edges=tuple(sorted(edge_faces)),
        adjacency={v: frozenset(n) for v, n in adjacency.items()},
        edge_faces={e: tuple(fs) for e, fs in edge_faces.items()},
    )


def _component(adjacency, start, removed) -> set:
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return seen


@dataclass(frozen=True)
class SpineEdge:
    w1: int
    w2: int
    s: int
    n: int

    @property
    def edge(self) -> Edge:
        return edge_key(self.w1, self.w2)

    def check(self, P: Polyhedron) -> "SpineEdge":
        if not P.has_edge(self.w1, self.w2):
            raise NotAnEdge(f"{{{self.w1}, {self.w2}}} is not an edge")
        if self.s == self.n or set(opposite_vertices(P, self.edge)) != {self.s, self.n}:
            raise NotAnEdge(
                f"{self.s} and {self.n} are not the apexes of the faces at {self.edge}"
            )
        return self


def opposite_vertices(P: Polyhedron, edge) -> tuple[int, int]:
    u, v = edge
    key = edge_key(u, v)
    if key not in P.edge_faces:
        raise NotAnEdge(f"{{{u}, {v}}} is not an edge")
    apexes = [next(x for x in f if x not in key) for f in P.edge_faces[key]]
    return tuple(sorted(apexes))


def spine_at(P: Polyhedron, edge) -> SpineEdge:
    """Spine for ``edge`` as given (w1, w2 order kept), apexes ascending."""
    s, n = opposite_vertices(P, edge)
    return SpineEdge(edge[0], edge[1], s, n)


# ---------------------------------------------------------------------------
# realizations


@dataclass(frozen=True)
class Realization:
    positions: Mapping  # vertex -> (Fraction, Fraction, Fraction)

    def __post_init__(self):
        clean = {
            int(v): tuple(as_rational(c) for c in p) for v, p in sorted(self.positions.items())
        }
        for v, p in clean.items():
            if len(p) != 3:
                raise ValueError(f"position of {v} must have 3 coordinates")
        object.__setattr__(self, "positions", clean)

    def __getitem__(self, v):
        return self.positions[v]

    def check(self, P: Polyhedron) -> "Realization":
        missing = [v for v in P.vertices if v not in self.positions]
        if missing:
            raise ValueError(f"realization lacks vertices {missing}")
        for u, v in P.edges:
            if self.positions[u] == self.positions[v]:
                raise CoincidentEndpoints(f"edge {(u, v)} has coincident endpoints")
        return self


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def squared_distance(a, b) -> Fraction:
    d = sub(a, b)
    return dot(d, d)


@dataclass(frozen=True)
class EdgeLengths:
    squared: Mapping  # edge -> Fraction
    length: Mapping  # edge -> Radical

    @classmethod
    def from_squared(cls, squared: Mapping) -> "EdgeLengths":
        sq = {edge_key(*e): as_rational(q) for e, q in squared.items()}
        for e, q in sq.items():
            if q <= 0:
                raise ValueError(f"squared length of {e} must be positive")
        sq = dict(sorted(sq.items()))
        return cls(sq, {e: radical_from_square(q) for e, q in sq.items()})

    def of(self, u: int, v: int) -> Radical:
        return self.length[edge_key(u, v)]

    def squared_of(self, u: int, v: int) -> Fraction:
        return self.squared[edge_key(u, v)]

    def check(self, P: Polyhedron) -> "EdgeLengths":
        if set(self.squared) != set(P.edges):
            raise ValueError("edge lengths do not cover exactly the polyhedron's edges")
        return self


def induced_lengths(P: Polyhedron, rho: Realization) -> EdgeLengths:
    squared = {}
    for u, v in P.edges:
        q = squared_distance(rho[u], rho[v])
        if q == 0:
            raise CoincidentEndpoints(f"edge {(u, v)} has coincident endpoints")
        squared[(u, v)] = q
    return EdgeLengths.from_squared(squared)


def dihedral_indicator(rho: Realization, spine: SpineEdge) -> Fraction:
    """Dot product of the two face normals at the spine edge.

    Face normals have flex-invariant norms, so this rational varies along a
    flex exactly when the dihedral angle does.
    """
    w1, w2 = rho[spine.w1], rho[spine.w2]
    axis = sub(w2, w1)
    n1 = cross(axis, sub(rho[spine.s], w1))
    n2 = cross(axis, sub(rho[spine.n], w1))
    for label, nv in (("s", n1), ("n", n2)):
        if not any(nv):
            raise DegenerateTriangle(f"face at the spine through {label} is collinear")
    return dot(n1, n2)


def non_edge_squared_distances(P: Polyhedron, rho: Realization) -> dict:
    out = {}
    vs = P.vertices
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if not P.has_edge(u, v):
                out[(u, v)] = squared_distance(rho[u], rho[v])
    return out


# ---------------------------------------------------------------------------
# cycles


def _check_cycle(P: Polyhedron, cycle: Sequence[int]) -> tuple:
    cycle = tuple(cycle)
    if len(cycle) >= 2 and cycle[0] == cycle[-1]:
        cycle = cycle[:-1]
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise NotACycle(f"{cycle} is not a cycle")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if a not in P.adjacency or not P.has_edge(a, b):
            raise NotACycle(f"{cycle}: {a} and {b} are not adjacent")
    return cycle


def cycle_edges(cycle: Sequence[int]) -> list:
    cycle = tuple(cycle)
    return [(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])]


def components_without(P: Polyhedron, removed: Iterable[int]) -> list:
    """Connected components of the skeleton minus ``removed``, by smallest id."""
    removed = frozenset(removed)
    left = [v for v in P.vertices if v not in removed]
    comps = []
    seen: set = set()
    for v in left:
        if v in seen:
            continue
        comp = _component(P.adjacency, v, removed)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_separating_cycle(P: Polyhedron, cycle: Sequence[int]) -> tuple[bool, list]:
    cycle = _check_cycle(P, cycle)
    comps = components_without(P, cycle)
    return len(comps) > 1, comps


def is_induced_cycle(P: Polyhedron, cycle: Sequence[int]) -> bool:
    cycle = _check_cycle(P, cycle)
    k = len(cycle)
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if P.has_edge(cycle[i], cycle[j]):
                return False
    return True
