"""The Moebius (conformal) quadric model of R^3 inside P^4.

Points are ``(x:y:z:r:h)`` on ``M: x^2+y^2+z^2 - r*h = 0`` with Gaussian
rational coordinates.  Euclidean space sits inside ``M`` via
``u -> (u : |u|^2 : 1)``; the points with ``h = 0`` are at infinity, and the
cone vertex ``omega_inf = (0:0:0:1:0)`` is the only real one among them.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotInFin, NotSimpleInfinite, OffQuadricInput, UnsolvablePivot
from .exact import ONE, ZERO, I, Scalar, format_scalar

__all__ = [
    "ProjectivePoint",
    "PointClass",
    "DistanceKind",
    "ExtendedDistance",
    "DirectionClass",
    "OMEGA_INF",
    "embed",
    "classify",
    "quadric_value",
    "bilinear_form",
    "tangent_form",
    "distance",
    "psi",
    "fin_contains",
    "sigma_project",
    "sample_fin_point",
]


def _canonical(coords: Sequence[Scalar]) -> tuple:
    coords = tuple(Scalar.coerce(c) for c in coords)
    for c in coords:
        if c:
            if c == ONE:
                return coords
            inv = c.inverse()
            return tuple(v * inv for v in coords)
    raise ValueError("all homogeneous coordinates are zero")


class ProjectivePoint:
    """A point of P^4 stored in canonical form (first nonzero coordinate is 1)."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (Scalar, int)):
            coords = tuple(coords[0])
        if len(coords) != 5:
            raise ValueError(f"a point of P^4 has 5 coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", _canonical(coords))

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    x = property(lambda self: self.coords[0])
    y = property(lambda self: self.coords[1])
    z = property(lambda self: self.coords[2])
    r = property(lambda self: self.coords[3])
    h = property(lambda self: self.coords[4])

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(format_scalar(c) for c in self.coords) + ")"

    def affine(self) -> tuple[Scalar, Scalar, Scalar]:
        """``(x/h, y/h, z/h)``; only for finite points."""
        if not self.h:
            raise ValueError(f"{self!r} has h = 0")
        inv = self.h.inverse()
        return (self.x * inv, self.y * inv, self.z * inv)


OMEGA_INF = ProjectivePoint(0, 0, 0, 1, 0)


class PointClass(enum.Enum):
    FINITE = "Finite"
    SIMPLE_INFINITE = "SimpleInfinite"
    OMEGA_INFINITY = "OmegaInfinity"
    OFF_QUADRIC = "OffQuadric"


class DistanceKind(enum.Enum):
    VALUE = "value"
    INFINITY = "infinity"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class ExtendedDistance:
    kind: DistanceKind
    value: Optional[Scalar] = None

    @classmethod
    def of(cls, value) -> "ExtendedDistance":
        return cls(DistanceKind.VALUE, Scalar.coerce(value))

    @property
    def is_value(self):
        return self.kind is DistanceKind.VALUE

    @property
    def is_infinity(self):
        return self.kind is DistanceKind.INFINITY

    @property
    def is_undefined(self):
        return self.kind is DistanceKind.UNDEFINED


INFINITY = ExtendedDistance(DistanceKind.INFINITY)
UNDEFINED = ExtendedDistance(DistanceKind.UNDEFINED)


class DirectionClass:
    """A point ``(x:y:z)`` of the conic ``x^2+y^2+z^2 = 0``."""

    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (Scalar, int)):
            coords = tuple(coords[0])
        if len(coords) != 3:
            raise ValueError("a direction has 3 homogeneous coordinates")
        coords = _canonical(coords)
        if coords[0] * coords[0] + coords[1] * coords[1] + coords[2] * coords[2]:
            raise ValueError(f"direction {coords} is not on the absolute conic")
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("DirectionClass is immutable")

    def __eq__(self, other):
        if not isinstance(other, DirectionClass):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(format_scalar(c) for c in self.coords) + ")"


def embed(u) -> ProjectivePoint:
    """Conformal embedding ``(x,y,z) -> (x:y:z:x^2+y^2+z^2:1)``.

    Coordinates may be rationals or Gaussian rationals.
    """
    x, y, z = (Scalar.coerce(c) for c in u)
    return ProjectivePoint(x, y, z, x * x + y * y + z * z, ONE)


def quadric_value(p: ProjectivePoint) -> Scalar:
    x, y, z, r, h = p.coords
    return x * x + y * y + z * z - r * h


def on_quadric(p: ProjectivePoint) -> bool:
    return not quadric_value(p)


def classify(p: ProjectivePoint) -> PointClass:
    if quadric_value(p):
        return PointClass.OFF_QUADRIC
    if p.h:
        return PointClass.FINITE
    if not (p.x or p.y or p.z):
        return PointClass.OMEGA_INFINITY
    return PointClass.SIMPLE_INFINITE


def bilinear_form(p: ProjectivePoint, q: ProjectivePoint) -> Scalar:
    """Polar form of the quadric, evaluated on the canonical representatives.

    The value depends on representatives; only its vanishing and the ratio
    taken by :func:`distance` are projective invariants.
    """
    x1, y1, z1, r1, h1 = p.coords
    x2, y2, z2, r2, h2 = q.coords
    return x1 * x2 + y1 * y2 + z1 * z2 - (r1 * h2 + r2 * h1) / 2


def tangent_form(p: ProjectivePoint, q: ProjectivePoint) -> Scalar:
    """Left side of the tangent hyperplane equation of ``M`` at ``p``, at ``q``.

    ``q`` lies on ``T_p M`` iff this vanishes.
    """
    xp, yp, zp, rp, hp = p.coords
    x, y, z, r, h = q.coords
    return 2 * (x * xp + y * yp + z * zp) - (r * hp + h * rp)


def _require_on_quadric(*points):
    for p in points:
        if quadric_value(p):
            raise OffQuadricInput(f"{p!r} is not on the quadric")


def distance(p1: ProjectivePoint, p2: ProjectivePoint) -> ExtendedDistance:
    """Extended squared distance ``(<p1,p2> : h1*h2)``.

    For finite points this is ``-|u1-u2|^2 / 2``.
    """
    _require_on_quadric(p1, p2)
    num = bilinear_form(p1, p2)
    den = p1.h * p2.h
    if den:
        return ExtendedDistance.of(num / den)
    return UNDEFINED if not num else INFINITY


def psi(p: ProjectivePoint) -> DirectionClass:
    if classify(p) is not PointClass.SIMPLE_INFINITE:
        raise NotSimpleInfinite(f"{p!r} is not a simple infinite point")
    return DirectionClass(p.x, p.y, p.z)


def fin_contains(p: ProjectivePoint, q: ProjectivePoint) -> bool:
    """Is ``q`` a finite point on the tangent hyperplane of ``M`` at ``p``?"""
    if classify(p) is not PointClass.SIMPLE_INFINITE:
        raise NotSimpleInfinite(f"{p!r} is not a simple infinite point")
    _require_on_quadric(q)
    return bool(q.h) and not bilinear_form(p, q)


def _pivot(p: ProjectivePoint) -> int:
    for i, c in enumerate(p.coords[:3]):
        if c:
            return i
    raise NotSimpleInfinite(f"{p!r} has no nonzero spatial coordinate")


def sigma_project(p: ProjectivePoint, q: ProjectivePoint) -> Scalar:
    """One-dimensional coordinate of ``q`` on ``Fin_p``.

    Scaled so that ``distance(q1, q2) == (sigma1 - sigma2)**2 / 2`` for any
    ``q1, q2`` in ``Fin_p``.  The pivot is the first nonzero of ``p``'s
    spatial coordinates; the formula is cyclically permuted accordingly.
    """
    if not fin_contains(p, q):
        raise NotInFin(f"{q!r} is not in Fin of {p!r}")
    xt, yt, zt = p.coords[:3]
    x, y, z = q.affine()
    k = _pivot(p)
    if k == 0:
        return (zt * y - yt * z) / xt
    if k == 1:
        return (xt * z - zt * x) / yt
    return (yt * x - xt * y) / zt


def sample_fin_point(p: ProjectivePoint, free, pivot_choice: int) -> ProjectivePoint:
    """A finite point of ``Fin_p`` with two affine coordinates prescribed.

    ``free`` holds the two coordinates other than ``pivot_choice`` (in x, y, z
    order); the pivot coordinate is solved from the tangency condition
    ``r~ = 2(x~ x + y~ y + z~ z)``.
    """
    if classify(p) is not PointClass.SIMPLE_INFINITE:
        raise NotSimpleInfinite(f"{p!r} is not a simple infinite point")
    if pivot_choice not in (0, 1, 2):
        raise ValueError("pivot_choice must be 0, 1 or 2")
    direction = p.coords[:3]
    if not direction[pivot_choice]:
        raise UnsolvablePivot(f"coordinate {pivot_choice} of {p!r} vanishes")
    a, b = (Scalar.coerce(v) for v in free)
    others = [i for i in range(3) if i != pivot_choice]
    u = [ZERO, ZERO, ZERO]
    u[others[0]], u[others[1]] = a, b
    rest = direction[others[0]] * a + direction[others[1]] * b
    u[pivot_choice] = (p.r / 2 - rest) / direction[pivot_choice]
    return embed(u)


def conic_direction(s: Scalar, t: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    """Rational parametrization ``(s^2 - t^2, i(s^2 + t^2), 2st)`` of the absolute conic."""
    s, t = Scalar.coerce(s), Scalar.coerce(t)
    return (s * s - t * t, I * (s * s + t * t), 2 * s * t)
