"""A few standard triangular polyhedra used by tests, docs and the CLI."""
from __future__ import annotations

from .polyhedron import Polyhedron, validate_complex


def bipyramid(n: int) -> Polyhedron:
    """Suspension of an ``n``-gon: ring ``1..n``, apexes ``n+1`` and ``n+2``."""
    if n < 3:
        raise ValueError("a bipyramid needs an equator of length >= 3")
    top, bottom = n + 1, n + 2
    faces = []
    for i in range(1, n + 1):
        j = i % n + 1
        faces.append((i, j, top))
        faces.append((i, j, bottom))
    return validate_complex(range(1, n + 3), faces)


def octahedron() -> Polyhedron:
    """Equator 1-2-3-4, poles 5 and 6."""
    return bipyramid(4)


def hexagonal_suspension() -> Polyhedron:
    return bipyramid(6)


def icosahedron() -> Polyhedron:
    """Vertex 1 on top, rings 2..6 and 7..11, vertex 12 at the bottom."""
    faces = []
    for i in range(5):
        a, b = 2 + i, 2 + (i + 1) % 5
        c, d = 7 + i, 7 + (i + 1) % 5
        faces += [(1, a, b), (a, b, c), (b, c, d), (12, c, d)]
    return validate_complex(range(1, 13), faces)


NAMED = {
    "octahedron": octahedron,
    "hexagonal-suspension": hexagonal_suspension,
    "icosahedron": icosahedron,
}
