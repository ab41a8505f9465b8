"""Command line interface.

Exit status: 0 on success (or when a witness is found), 1 on a clean negative
answer (invalid polyhedron, no witness, a configuration or flex that fails its
checks), 2 on unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, serialize
from .butterfly import DEFAULT_SLOPES, ButterflySpec, build_bundle, verify_flex
from .coloring import run_pipeline
from .errors import FlexCycleError, InputFormatError
from .exact import parse_rational
from .polyhedron import SpineEdge, induced_lengths, spine_at
from .zero_sum import default_workers, edge_obstruction_report, scan_all_edges

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _int_list(text, size=None):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputFormatError(f"expected comma-separated integers, got {text!r}") from None
    if size is not None and len(vals) != size:
        raise InputFormatError(f"expected {size} integers, got {text!r}")
    return vals


def _sign_list(text):
    out = []
    for t in text.split(","):
        t = t.strip()
        if t in ("+", "+1", "1"):
            out.append(1)
        elif t in ("-", "-1"):
            out.append(-1)
        else:
            raise InputFormatError(f"bad sign {t!r}; use + or -")
    return out


def _rational_list(text):
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def load_polyhedron(arg):
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        if name not in catalog.NAMED:
            raise InputFormatError(f"unknown builtin polyhedron {name!r}")
        return catalog.NAMED[name]()
    return serialize.polyhedron_from_json(serialize.load_json(arg), Path(arg).name)


def load_lengths(arg, P):
    data = serialize.load_json(arg)
    if isinstance(data, dict) and "lengths" in data:
        # a butterfly bundle
        data = data["lengths"]
    if isinstance(data, dict) and "positions" in data:
        rho = serialize.realization_from_json(data, Path(arg).name).check(P)
        return induced_lengths(P, rho)
    lam = serialize.lengths_from_json(data, Path(arg).name)
    try:
        return lam.check(P)
    except ValueError as exc:
        raise InputFormatError(f"{arg}: {exc}") from None


def _emit(args, text):
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args):
    try:
        P = load_polyhedron(args.polyhedron)
    except InputFormatError:
        raise
    except FlexCycleError as exc:
        _emit(args, serialize.dumps({"valid": False, "error": type(exc).__name__, "message": str(exc)}))
        return EXIT_NEGATIVE
    _emit(
        args,
        serialize.dumps(
            {"valid": True, "vertices": len(P.vertices), "edges": len(P.edges), "faces": len(P.faces)}
        ),
    )
    return EXIT_OK


def cmd_lengths(args):
    P = load_polyhedron(args.polyhedron)
    rho = serialize.realization_from_json(
        serialize.load_json(args.realization), Path(args.realization).name
    )
    rho.check(P)
    if args.format == "off":
        _emit(args, serialize.realization_to_off(P, rho))
    else:
        _emit(args, serialize.dumps(serialize.lengths_to_json(induced_lengths(P, rho))))
    return EXIT_OK


def cmd_obstruct(args):
    P = load_polyhedron(args.polyhedron)
    lam = load_lengths(args.lengths, P)
    if args.edge:
        u, v = _int_list(args.edge, 2)
        rep = edge_obstruction_report(P, lam, spine_at(P, (u, v)), args.max_len)
        _emit(args, serialize.dumps(serialize.obstruction_to_json(rep)))
        return EXIT_OK if rep.witness is not None else EXIT_NEGATIVE
    reports = scan_all_edges(P, lam, args.max_len, default_workers())
    _emit(args, serialize.dumps(serialize.scan_to_json(reports)))
    return EXIT_OK if any(r.witness is not None for r in reports.values()) else EXIT_NEGATIVE


def cmd_color(args):
    P = load_polyhedron(args.polyhedron)
    lam = load_lengths(args.lengths, P)
    cfg = serialize.limit_config_from_json(serialize.load_json(args.config), Path(args.config).name)
    cert = run_pipeline(P, lam, cfg)
    _emit(args, serialize.dumps(serialize.signed_cycle_to_json(cert)))
    return EXIT_OK


def cmd_butterfly(args):
    P = load_polyhedron(args.polyhedron)
    cycle = _int_list(args.cycle)
    signs = _sign_list(args.signs)
    xs = None
    if args.x:
        vals = _rational_list(args.x)
        if len(vals) != len(cycle):
            raise InputFormatError("--x needs one position per cycle vertex")
        xs = dict(zip(cycle, vals))
    slopes = _rational_list(args.slopes) if args.slopes else list(DEFAULT_SLOPES)
    try:
        spec = ButterflySpec(P, tuple(cycle), tuple(signs), args.seed, xs)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
    bundle = build_bundle(spec, slopes, args.rotating)
    if args.format == "off":
        if not args.output or args.output == "-":
            raise InputFormatError("--format off needs --output DIR for the frame files")
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, smp in enumerate(bundle.samples):
            (out / f"frame_{i:03d}.off").write_text(serialize.realization_to_off(P, smp.realization))
        return EXIT_OK
    _emit(args, serialize.dumps(serialize.bundle_to_json(bundle)))
    return EXIT_OK


def cmd_flex_verify(args):
    P = load_polyhedron(args.polyhedron)
    data = serialize.load_json(args.samples)
    samples = serialize.samples_from_json(data, Path(args.samples).name)
    if args.spine:
        spine = SpineEdge(*_int_list(args.spine, 4))
    elif isinstance(data, dict) and "limit_configuration" in data:
        spine = serialize.spine_from_json(data["limit_configuration"]["spine"])
    else:
        raise InputFormatError("no spine given: pass --spine w1,w2,s,n")
    try:
        spine.check(P)
    except FlexCycleError as exc:
        raise InputFormatError(str(exc)) from None
    for i, smp in enumerate(samples):
        smp.realization.check(P)
    rep = verify_flex(P, samples, spine)
    _emit(args, serialize.dumps({"passed": True, **serialize.flex_report_to_json(rep)}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexcycle",
        description="Zero-sum cycle certificates and obstructions for triangular polyhedra.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("json", "off"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-len", type=int, default=None, dest="max_len")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a polyhedron file")
    p.add_argument("polyhedron")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lengths", parents=[common], help="edge lengths of a realization")
    p.add_argument("polyhedron")
    p.add_argument("realization")
    p.set_defaults(func=cmd_lengths)

    p = sub.add_parser("obstruct", parents=[common], help="search zero-sum induced cycles")
    p.add_argument("polyhedron")
    p.add_argument("lengths", help="edge-length, realization or bundle JSON")
    p.add_argument("--edge", help="single spine edge u,v (default: scan all edges)")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("color", parents=[common], help="certificate from a limit configuration")
    p.add_argument("polyhedron")
    p.add_argument("lengths", help="edge-length, realization or bundle JSON")
    p.add_argument("config", help="limit configuration JSON")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("butterfly", parents=[common], help="build and certify a butterfly flex")
    p.add_argument("polyhedron")
    p.add_argument("--cycle", required=True, help="separating cycle, e.g. 1,2,3,4")
    p.add_argument("--signs", required=True, help="one sign per cycle edge, e.g. +,+,-,-")
    p.add_argument("--x", help="axis positions of the cycle vertices (rationals)")
    p.add_argument("--slopes", help="rotation slopes of the sampled flex (rationals)")
    p.add_argument("--rotating", type=int, default=None, help="component sent to infinity")
    p.set_defaults(func=cmd_butterfly)

    p = sub.add_parser("flex-verify", parents=[common], help="verify a sampled flex")
    p.add_argument("polyhedron")
    p.add_argument("samples", help="sample file or butterfly bundle")
    p.add_argument("--spine", help="w1,w2,s,n (default: taken from a bundle)")
    p.set_defaults(func=cmd_flex_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_len is not None and args.max_len < 3:
        print("error: --max-len must be at least 3", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FlexCycleError as exc:
        payload = {"error": type(exc).__name__, "stage": exc.stage, "message": str(exc)}
        sys.stdout.write(serialize.dumps(payload))
        return EXIT_NEGATIVE
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
