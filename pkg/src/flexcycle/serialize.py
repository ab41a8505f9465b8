"""JSON and OFF codecs.

Every number in JSON is an exact string (``"p/q"`` rationals,
``"p/q+r/s*i"`` Gaussian rationals).  Loading re-canonicalizes and checks
invariants, and any structural problem is reported as
:class:`~flexcycle.errors.InputFormatError` naming the offending field.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .butterfly import ButterflyBundle, ButterflySpec, FlexReport, FlexSample
from .coloring import LimitConfiguration, SignedCycle
from .errors import FlexCycleError, InputFormatError
from .exact import (
    format_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
    radical_from_json,
    radical_from_square,
    radical_to_json,
)
from .mobius import DirectionClass, ProjectivePoint
from .polyhedron import EdgeLengths, Polyhedron, Realization, SpineEdge, validate_complex
from .zero_sum import ObstructionReport


def load_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _get(obj, key, ctx):
    if not isinstance(obj, dict):
        raise InputFormatError(f"{ctx}: expected an object")
    if key not in obj:
        raise InputFormatError(f"{ctx}: missing field {key!r}")
    return obj[key]


def _int(value, ctx) -> int:
    if isinstance(value, bool):
        raise InputFormatError(f"{ctx}: expected an integer vertex id, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise InputFormatError(f"{ctx}: expected an integer vertex id, got {value!r}")


def _list(value, ctx, size=None) -> list:
    if not isinstance(value, list):
        raise InputFormatError(f"{ctx}: expected a list")
    if size is not None and len(value) != size:
        raise InputFormatError(f"{ctx}: expected {size} entries, got {len(value)}")
    return value


def _rat(value, ctx) -> Fraction:
    try:
        return parse_rational(value)
    except InputFormatError as exc:
        raise InputFormatError(f"{ctx}: {exc}") from None


# --- Moebius points


def point_to_json(p: ProjectivePoint) -> list:
    return [format_scalar(c) for c in p.coords]


def point_from_json(data, ctx="point") -> ProjectivePoint:
    coords = _list(data, ctx, 5)
    try:
        return ProjectivePoint(*(parse_scalar(c) for c in coords))
    except InputFormatError as exc:
        raise InputFormatError(f"{ctx}: {exc}") from None
    except ValueError as exc:
        raise InputFormatError(f"{ctx}: {exc}") from None


def direction_to_json(d: DirectionClass) -> list:
    return [format_scalar(c) for c in d.coords]


def direction_from_json(data, ctx="direction") -> DirectionClass:
    coords = _list(data, ctx, 3)
    try:
        return DirectionClass(*(parse_scalar(c) for c in coords))
    except (InputFormatError, ValueError) as exc:
        raise InputFormatError(f"{ctx}: {exc}") from None


# --- polyhedra and realizations


def polyhedron_to_json(P: Polyhedron) -> dict:
    return {"vertices": list(P.vertices), "faces": [list(f) for f in P.faces]}


def polyhedron_from_json(data, ctx="polyhedron") -> Polyhedron:
    verts = [_int(v, f"{ctx}.vertices[{i}]") for i, v in enumerate(_list(_get(data, "vertices", ctx), f"{ctx}.vertices"))]
    faces = []
    for i, f in enumerate(_list(_get(data, "faces", ctx), f"{ctx}.faces")):
        fctx = f"{ctx}.faces[{i}]"
        faces.append(tuple(_int(v, fctx) for v in _list(f, fctx)))
    return validate_complex(verts, faces)


def realization_to_json(rho: Realization) -> dict:
    return {
        "positions": {
            str(v): [format_rational(c) for c in p] for v, p in rho.positions.items()
        }
    }


def realization_from_json(data, ctx="realization") -> Realization:
    raw = _get(data, "positions", ctx)
    if not isinstance(raw, dict):
        raise InputFormatError(f"{ctx}.positions: expected an object")
    pos = {}
    for key, coords in raw.items():
        pctx = f"{ctx}.positions.{key}"
        v = _int(key, pctx)
        pos[v] = tuple(_rat(c, pctx) for c in _list(coords, pctx, 3))
    return Realization(pos)


def lengths_to_json(lam: EdgeLengths) -> dict:
    return {
        "edges": [
            {
                "edge": list(e),
                "squared": format_rational(q),
                "length": radical_to_json(lam.length[e]),
            }
            for e, q in lam.squared.items()
        ]
    }


def lengths_from_json(data, ctx="lengths") -> EdgeLengths:
    squared = {}
    given = {}
    for i, entry in enumerate(_list(_get(data, "edges", ctx), f"{ctx}.edges")):
        ectx = f"{ctx}.edges[{i}]"
        u, v = (_int(x, ectx) for x in _list(_get(entry, "edge", ectx), f"{ectx}.edge", 2))
        key = (min(u, v), max(u, v))
        q = _rat(_get(entry, "squared", ectx), f"{ectx}.squared")
        if q <= 0:
            raise InputFormatError(f"{ectx}.squared: must be positive")
        squared[key] = q
        if "length" in entry:
            given[key] = radical_from_json(entry["length"])
    lam = EdgeLengths.from_squared(squared)
    for key, r in given.items():
        if r != lam.length[key]:
            raise InputFormatError(f"{ctx}: length of edge {key} does not square to its 'squared'")
    return lam


def spine_to_json(sp: SpineEdge) -> dict:
    return {"w1": sp.w1, "w2": sp.w2, "s": sp.s, "n": sp.n}


def spine_from_json(data, ctx="spine") -> SpineEdge:
    return SpineEdge(*(_int(_get(data, k, ctx), f"{ctx}.{k}") for k in ("w1", "w2", "s", "n")))


# --- limit configurations and certificates


def limit_config_to_json(cfg: LimitConfiguration) -> dict:
    return {
        "spine": spine_to_json(cfg.spine),
        "points": {str(v): point_to_json(p) for v, p in cfg.points.items()},
    }


def limit_config_from_json(data, ctx="limit_configuration") -> LimitConfiguration:
    spine = spine_from_json(_get(data, "spine", ctx), f"{ctx}.spine")
    raw = _get(data, "points", ctx)
    if not isinstance(raw, dict):
        raise InputFormatError(f"{ctx}.points: expected an object")
    points = {
        _int(k, f"{ctx}.points.{k}"): point_from_json(p, f"{ctx}.points.{k}")
        for k, p in raw.items()
    }
    try:
        return LimitConfiguration(points, spine)
    except FlexCycleError as exc:
        raise InputFormatError(f"{ctx}: {exc}") from None


def signed_cycle_to_json(sc: SignedCycle) -> dict:
    return {
        "cycle": list(sc.cycle),
        "signs": list(sc.signs),
        "lengths_squared": [format_rational(q) for q in sc.lengths_squared],
    }


def signed_cycle_from_json(data, ctx="signed_cycle") -> SignedCycle:
    cycle = [_int(v, f"{ctx}.cycle") for v in _list(_get(data, "cycle", ctx), f"{ctx}.cycle")]
    signs = _list(_get(data, "signs", ctx), f"{ctx}.signs", len(cycle))
    if any(s not in (1, -1) or isinstance(s, bool) for s in signs):
        raise InputFormatError(f"{ctx}.signs: entries must be 1 or -1")
    sq = _list(_get(data, "lengths_squared", ctx), f"{ctx}.lengths_squared", len(cycle))
    lens = []
    for i, q in enumerate(sq):
        val = _rat(q, f"{ctx}.lengths_squared[{i}]")
        if val <= 0:
            raise InputFormatError(f"{ctx}.lengths_squared[{i}]: must be positive")
        lens.append(radical_from_square(val))
    return SignedCycle(tuple(cycle), tuple(signs), tuple(lens))


def obstruction_to_json(rep: ObstructionReport) -> dict:
    return {
        "spine": spine_to_json(rep.spine),
        "witness": None if rep.witness is None else signed_cycle_to_json(rep.witness),
        "cycles_examined": rep.cycles_examined,
        "exhausted": rep.exhausted,
    }


def obstruction_from_json(data, ctx="report") -> ObstructionReport:
    w = _get(data, "witness", ctx)
    exhausted = _get(data, "exhausted", ctx)
    if not isinstance(exhausted, bool):
        raise InputFormatError(f"{ctx}.exhausted: expected a boolean")
    return ObstructionReport(
        spine_from_json(_get(data, "spine", ctx), f"{ctx}.spine"),
        None if w is None else signed_cycle_from_json(w, f"{ctx}.witness"),
        _int(_get(data, "cycles_examined", ctx), f"{ctx}.cycles_examined"),
        exhausted,
    )


def scan_to_json(reports: dict) -> dict:
    return {
        "edges": [
            {"edge": list(e), **obstruction_to_json(rep)} for e, rep in reports.items()
        ]
    }


def scan_from_json(data, ctx="scan") -> dict:
    out = {}
    for i, entry in enumerate(_list(_get(data, "edges", ctx), f"{ctx}.edges")):
        ectx = f"{ctx}.edges[{i}]"
        u, v = (_int(x, ectx) for x in _list(_get(entry, "edge", ectx), f"{ectx}.edge", 2))
        out[(u, v)] = obstruction_from_json(entry, ectx)
    return out


# --- butterfly flexes


def flex_sample_to_json(smp: FlexSample) -> dict:
    return {
        "parameters": {str(k): format_rational(t) for k, t in smp.parameters.items()},
        **realization_to_json(smp.realization),
    }


def flex_sample_from_json(data, ctx="sample") -> FlexSample:
    raw = _get(data, "parameters", ctx)
    if not isinstance(raw, dict):
        raise InputFormatError(f"{ctx}.parameters: expected an object")
    params = {
        _int(k, f"{ctx}.parameters"): _rat(t, f"{ctx}.parameters.{k}") for k, t in raw.items()
    }
    return FlexSample(params, realization_from_json(data, ctx))


def butterfly_spec_to_json(spec: ButterflySpec) -> dict:
    return {
        "cycle": list(spec.cycle),
        "signs": list(spec.signs),
        "seed": spec.seed,
        "x_positions": None
        if spec.x_positions is None
        else {str(v): format_rational(x) for v, x in spec.x_positions.items()},
    }


def butterfly_spec_from_json(data, P: Polyhedron, ctx="spec") -> ButterflySpec:
    xs = data.get("x_positions") if isinstance(data, dict) else None
    cycle = [_int(v, f"{ctx}.cycle") for v in _list(_get(data, "cycle", ctx), f"{ctx}.cycle")]
    signs = _list(_get(data, "signs", ctx), f"{ctx}.signs", len(cycle))
    try:
        return ButterflySpec(
            P,
            tuple(cycle),
            tuple(signs),
            _int(_get(data, "seed", ctx), f"{ctx}.seed"),
            None
            if xs is None
            else {_int(k, f"{ctx}.x_positions"): _rat(x, f"{ctx}.x_positions.{k}") for k, x in xs.items()},
        )
    except ValueError as exc:
        raise InputFormatError(f"{ctx}: {exc}") from None


def flex_report_to_json(rep: FlexReport) -> dict:
    return {
        "samples": rep.samples,
        "dihedral_indicators": [format_rational(q) for q in rep.dihedral_indicators],
        "distinct_indicators": rep.distinct_indicators,
        "varying_non_edges": [list(p) for p in rep.varying_non_edges],
    }


def samples_to_json(spec: ButterflySpec, samples, rotating_component=None) -> dict:
    meta = butterfly_spec_to_json(spec)
    meta["rotating_component"] = rotating_component
    meta["parameters"] = [
        {str(k): format_rational(t) for k, t in s.parameters.items()} for s in samples
    ]
    return {"metadata": meta, "samples": [flex_sample_to_json(s) for s in samples]}


def samples_from_json(data, ctx="flex") -> list:
    if isinstance(data, list):
        items = data
    else:
        items = _list(_get(data, "samples", ctx), f"{ctx}.samples")
    return [flex_sample_from_json(s, f"{ctx}.samples[{i}]") for i, s in enumerate(items)]


def bundle_to_json(b: ButterflyBundle) -> dict:
    return {
        "metadata": {
            **butterfly_spec_to_json(b.spec),
            "rotating_component": b.rotating_component,
        },
        "polyhedron": polyhedron_to_json(b.spec.polyhedron),
        "realization": realization_to_json(b.realization),
        "lengths": lengths_to_json(b.lengths),
        "limit_configuration": limit_config_to_json(b.limit),
        "certificate": signed_cycle_to_json(b.certificate),
        "samples": [flex_sample_to_json(s) for s in b.samples],
        "verification": flex_report_to_json(b.report),
    }


# --- OFF export


def realization_to_off(P: Polyhedron, rho: Realization) -> str:
    index = {v: i for i, v in enumerate(P.vertices)}
    lines = ["OFF", f"{len(P.vertices)} {len(P.faces)} {len(P.edges)}"]
    for v in P.vertices:
        lines.append(" ".join(f"{float(c):.17g}" for c in rho[v]))
    for f in P.faces:
        lines.append("3 " + " ".join(str(index[v]) for v in f))
    return "\n".join(lines) + "\n"
