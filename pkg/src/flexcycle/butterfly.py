"""Butterfly flexes.

Put a separating cycle ``S`` on the x-axis, ordered along the axis according
to a sign pattern, and place everything else anywhere off the axis.  Every
connected component of ``G - S`` can then spin about the axis on its own,
which is a flex that keeps all edge lengths.  Rotations use rational slopes,
so every sample is exact.

Sending the spin parameter of one component to complex infinity moves all of
its vertices to the simple infinite point ``(0:1:-i:0:0)`` and leaves the
rest in place; that limit is produced here in closed form and fed to the
coloring pipeline.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .coloring import LimitConfiguration, SignedCycle, run_pipeline
from .errors import (
    AllSignsEqual,
    CongruentSamples,
    ConstantDihedral,
    DegenerateRotatingVertex,
    LengthDrift,
    MissingComponentParameter,
    NoUsableSpine,
    NotSeparating,
    PlacementFailure,
    UnsatisfiableSignPattern,
)
from .exact import I, ONE, ZERO, as_rational
from .mobius import ProjectivePoint, embed
from .polyhedron import (
    EdgeLengths,
    Polyhedron,
    Realization,
    SpineEdge,
    cross,
    dihedral_indicator,
    induced_lengths,
    is_separating_cycle,
    non_edge_squared_distances,
    opposite_vertices,
    sub,
)

ROTATING_LIMIT = ProjectivePoint(ZERO, ONE, -I, ZERO, ZERO)
MAX_PLACEMENT_ATTEMPTS = 1000
MAX_DENOMINATOR = 64
DEFAULT_SLOPES = (Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2))


@dataclass(frozen=True)
class ButterflySpec:
    polyhedron: Polyhedron
    cycle: tuple
    signs: tuple
    seed: int = 0
    x_positions: Optional[Mapping] = None

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if self.x_positions is not None:
            object.__setattr__(
                self,
                "x_positions",
                {int(v): as_rational(x) for v, x in self.x_positions.items()},
            )
        if len(self.signs) != len(self.cycle):
            raise ValueError("need exactly one sign per cycle edge")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def components(self) -> list:
        separating, comps = is_separating_cycle(self.polyhedron, self.cycle)
        if not separating:
            raise NotSeparating(f"cycle {self.cycle} does not separate the skeleton")
        return comps


def auto_x_positions(cycle: Sequence[int], signs: Sequence[int]) -> dict:
    """Distinct integers ``0..k-1`` with ``x_j < x_{j+1}`` exactly on ``+`` edges.

    The signs orient the cycle; unless they all agree the orientation is
    acyclic and a topological order (smallest cycle index first) works.
    """
    k = len(cycle)
    if len(set(signs)) < 2:
        raise AllSignsEqual("all signs are equal; no cyclic ordering exists")
    indeg = [0] * k
    succ = [[] for _ in range(k)]
    for j, s in enumerate(signs):
        a, b = j, (j + 1) % k
        if s < 0:
            a, b = b, a
        succ[a].append(b)
        indeg[b] += 1
    ready = [j for j in range(k) if indeg[j] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        j = heapq.heappop(ready)
        order.append(j)
        for b in succ[j]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)
    if len(order) != k:
        raise UnsatisfiableSignPattern("sign pattern orients the cycle cyclically")
    return {cycle[j]: Fraction(rank) for rank, j in enumerate(order)}


def _respects(cycle, signs, xs) -> bool:
    k = len(cycle)
    for j, s in enumerate(signs):
        a, b = xs[cycle[j]], xs[cycle[(j + 1) % k]]
        if (s > 0 and not a < b) or (s < 0 and not a > b):
            return False
    return True


def _random_rational(rng: random.Random) -> Fraction:
    d = rng.randint(1, MAX_DENOMINATOR)
    return Fraction(rng.randint(-3 * d, 3 * d), d)


def construct_realization(spec: ButterflySpec) -> Realization:
    P = spec.polyhedron
    spec.components()
    if len(set(spec.signs)) < 2:
        raise AllSignsEqual("not all signs may be equal")
    if spec.x_positions is None:
        xs = auto_x_positions(spec.cycle, spec.signs)
    else:
        xs = dict(spec.x_positions)
        if set(xs) != set(spec.cycle):
            raise ValueError("x_positions must cover exactly the cycle vertices")
        if not _respects(spec.cycle, spec.signs, xs):
            raise UnsatisfiableSignPattern("x_positions contradict the sign pattern")
    on_axis = set(spec.cycle)
    fixed = {v: (xs[v], Fraction(0), Fraction(0)) for v in spec.cycle}
    free = [v for v in P.vertices if v not in on_axis]
    rng = random.Random(spec.seed)
    for _ in range(MAX_PLACEMENT_ATTEMPTS):
        pos = dict(fixed)
        for v in free:
            pos[v] = (_random_rational(rng), _random_rational(rng), _random_rational(rng))
        if _acceptable(P, pos, free, on_axis):
            return Realization(pos)
    raise PlacementFailure(f"no valid placement after {MAX_PLACEMENT_ATTEMPTS} attempts")


def _acceptable(P, pos, free, on_axis) -> bool:
    for v in free:
        if pos[v][1] == 0 and pos[v][2] == 0:
            return False
    for u, v in P.edges:
        if pos[u] == pos[v]:
            return False
    for f in P.faces:
        if all(v in on_axis for v in f):
            continue
        a, b, c = (pos[v] for v in f)
        if not any(cross(sub(b, a), sub(c, a))):
            return False
    return True


def rotation(slope) -> tuple:
    """``(cos, sin)`` of the rotation with half-angle tangent ``slope``."""
    t = as_rational(slope)
    den = 1 + t * t
    return (1 - t * t) / den, 2 * t / den


@dataclass(frozen=True)
class FlexSample:
    parameters: Mapping  # component index -> Fraction
    realization: Realization

    def __post_init__(self):
        object.__setattr__(
            self,
            "parameters",
            {int(k): as_rational(v) for k, v in sorted(self.parameters.items())},
        )


def sample_flex(spec: ButterflySpec, base: Realization, params: Mapping) -> FlexSample:
    comps = spec.components()
    missing = [i for i in range(len(comps)) if i not in params]
    if missing:
        raise MissingComponentParameter(f"no rotation parameter for components {missing}")
    extra = [k for k in params if not (isinstance(k, int) and 0 <= k < len(comps))]
    if extra:
        raise ValueError(f"unknown component ids {extra}")
    pos = dict(base.positions)
    for i, comp in enumerate(comps):
        c, s = rotation(params[i])
        for v in comp:
            x, y, z = pos[v]
            pos[v] = (x, y * c - z * s, y * s + z * c)
    rho = Realization(pos)
    P = spec.polyhedron
    assert induced_lengths(P, rho).squared == induced_lengths(P, base).squared
    return FlexSample(dict(params), rho)


def _spine_for(spec: ButterflySpec, comp) -> Optional[SpineEdge]:
    P, cyc = spec.polyhedron, spec.cycle
    on_axis = set(cyc)
    k = len(cyc)
    for j in range(k):
        a, b = cyc[j], cyc[(j + 1) % k]
        p, q = opposite_vertices(P, (a, b))
        for s, n in ((p, q), (q, p)):
            if s in comp and n not in comp and n not in on_axis:
                return SpineEdge(a, b, s, n)
    return None


def default_rotating_component(spec: ButterflySpec) -> int:
    for i, comp in enumerate(spec.components()):
        if _spine_for(spec, comp) is not None:
            return i
    raise NoUsableSpine("no component of G - S admits a spine edge on S")


def analytic_limit_configuration(
    spec: ButterflySpec, base: Realization, rotating_component: int
) -> LimitConfiguration:
    comps = spec.components()
    if not 0 <= rotating_component < len(comps):
        raise ValueError(f"no component with index {rotating_component}")
    comp = comps[rotating_component]
    for v in sorted(comp):
        _, y, z = base[v]
        if y == 0 and z == 0:
            raise DegenerateRotatingVertex(f"vertex {v} lies on the rotation axis")
    spine = _spine_for(spec, comp)
    if spine is None:
        raise NoUsableSpine(f"component {rotating_component} has no spine edge on S")
    points = {
        v: ROTATING_LIMIT if v in comp else embed(base[v])
        for v in spec.polyhedron.vertices
    }
    return LimitConfiguration(points, spine)


@dataclass(frozen=True)
class FlexReport:
    samples: int
    dihedral_indicators: tuple
    distinct_indicators: int
    varying_non_edges: tuple


def verify_flex(P: Polyhedron, samples: Sequence[FlexSample], spine: SpineEdge) -> FlexReport:
    if len(samples) < 2:
        raise ValueError("verify_flex needs at least two samples")
    ref = induced_lengths(P, samples[0].realization).squared
    for i, smp in enumerate(samples[1:], start=1):
        got = induced_lengths(P, smp.realization).squared
        for e in P.edges:
            if got[e] != ref[e]:
                raise LengthDrift(e, i)
    indicators = tuple(dihedral_indicator(smp.realization, spine) for smp in samples)
    if len(set(indicators)) < 2:
        raise ConstantDihedral(f"dihedral indicator at {spine.edge} is constant")
    dists = [non_edge_squared_distances(P, smp.realization) for smp in samples]
    varying = tuple(
        pair for pair in dists[0] if len({d[pair] for d in dists}) > 1
    )
    if not varying:
        raise CongruentSamples("all non-edge distances agree across samples")
    return FlexReport(len(samples), indicators, len(set(indicators)), varying)


@dataclass(frozen=True)
class ButterflyBundle:
    spec: ButterflySpec
    realization: Realization
    lengths: EdgeLengths
    rotating_component: int
    limit: LimitConfiguration
    certificate: SignedCycle
    samples: tuple
    report: FlexReport = field(repr=False)


def build_bundle(
    spec: ButterflySpec,
    slopes: Sequence = DEFAULT_SLOPES,
    rotating_component: Optional[int] = None,
) -> ButterflyBundle:
    """Construct, take the analytic limit, certify, sample and verify."""
    P = spec.polyhedron
    base = construct_realization(spec)
    lengths = induced_lengths(P, base)
    if rotating_component is None:
        rotating_component = default_rotating_component(spec)
    cfg = analytic_limit_configuration(spec, base, rotating_component)
    cert = run_pipeline(P, lengths, cfg)
    n_comp = len(spec.components())
    samples = tuple(
        sample_flex(
            spec,
            base,
            {i: (t if i == rotating_component else Fraction(0)) for i in range(n_comp)},
        )
        for t in slopes
    )
    report = verify_flex(P, samples, cfg.spine)
    return ButterflyBundle(spec, base, lengths, rotating_component, cfg, cert, samples, report)
