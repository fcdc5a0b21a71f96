"""Command-line front end: one dispatcher over all strataforge modules.

Data goes to stdout, errors go to stderr as the structured error name
followed by the message. Exit status is 0 on success, 1 on a domain
error, 2 on a usage error. The --format flag switches between plain text
and canonical JSON (sorted keys, compact separators), and STRATAFORGE_CAP
overrides the default enumeration cap when --cap is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .errors import StrataforgeError, UsageError
from .filling_engine import (
    FactFile,
    explain_chain,
    load_packaged_facts,
    propagate,
)
from .graded_rewriter import (
    normal_form,
    parse_poly,
    plane_preset,
    tetragonal_preset,
    trigonal_preset,
)
from .hurwitz_profiles import (
    RamificationProfile,
    fph_profile,
    simple_profile,
    validate_profile,
)
from .linear_conditions import (
    LineBundleOnCurve,
    independence_bound,
    plane_bound,
    tetragonal_bound,
    tetragonal_summand_degrees,
    trigonal_bound,
    trigonal_sections,
)
from .stable_graphs import (
    DEFAULT_CAP,
    canonical_key,
    classify,
    enumerate_graphs,
    has_separating_edge,
)
from .strata_classes import SpaceKind, enumerate_decorated

KIND_ROWS = ("bar", "ct", "rt", "open")


@dataclass(frozen=True)
class Config:
    """Resolved global options shared by every subcommand."""

    cap: int
    format: str

    def __post_init__(self):
        if self.cap < 1:
            raise UsageError("complexity cap must be >= 1")


def _default_cap():
    raw = os.environ.get("STRATAFORGE_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError("STRATAFORGE_CAP must be an integer") from None


def _dump(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _emit(config, data, text_lines):
    if config.format == "json":
        print(_dump(data))
    else:
        for line in text_lines:
            print(line)


# --- subcommands -------------------------------------------------------------


def _cmd_graphs(config, args):
    graphs = enumerate_graphs(
        args.g, args.n, cap=config.cap, max_edges=args.max_edges
    )
    kept = []
    for graph in graphs:
        flags = classify(graph)
        if args.compact_type and not flags.compact_type:
            continue
        if args.rational_tails and not flags.rational_tails:
            continue
        if args.no_separating_edge and has_separating_edge(graph):
            continue
        kept.append(graph)
    if args.count_only:
        _emit(config, {"count": len(kept)}, [str(len(kept))])
        return 0
    if args.json or config.format == "json":
        payload = {
            "count": len(kept),
            "graphs": [
                {"graph": graph.to_json_dict(), "key": canonical_key(graph)}
                for graph in kept
            ],
        }
        print(_dump(payload))
        return 0
    for graph in kept:
        print(canonical_key(graph))
    return 0


def _cmd_strata(config, args):
    strata = enumerate_decorated(args.g, args.n, args.codim, cap=config.cap)
    if args.count_only:
        _emit(config, {"count": len(strata)}, [str(len(strata))])
        return 0
    payload = {
        "count": len(strata),
        "strata": [s.to_json_dict() for s in strata],
    }
    _emit(config, payload, [_dump(s.to_json_dict()) for s in strata])
    return 0


def _cmd_fill(config, args):
    if args.facts is None:
        facts = load_packaged_facts()
    else:
        facts = FactFile.load(args.facts)
    db = propagate(facts)
    if args.explain:
        g, n, kind = args.explain
        chain = explain_chain(db, kind, int(g), int(n))
        lines = []
        for node in chain:
            lines.append(_dump(node))
        _emit(config, {"chain": chain}, lines)
        return 0
    if args.chart:
        _emit(config, db.chart_json(), [db.chart_text()])
        return 0
    summary = {}
    for short in KIND_ROWS:
        kind = SpaceKind.from_string(short)
        summary[short] = {
            str(g): db.max_n(kind, g) for g in range(db.g_max + 1)
        }
    lines = []
    for short in KIND_ROWS:
        cells = ["%s=%s" % (g, n) for g, n in sorted(
            summary[short].items(), key=lambda kv: int(kv[0])
        )]
        lines.append("%s: %s" % (short, " ".join(cells)))
    _emit(config, summary, lines)
    return 0


def _parse_partitions(text):
    parts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise UsageError("empty partition in --validate")
        try:
            parts.append(tuple(int(p) for p in chunk.split(",")))
        except ValueError:
            raise UsageError(
                "partitions must be comma-separated integers"
            ) from None
    return parts


def _cmd_rh(config, args):
    if args.simple:
        profile = simple_profile(args.k, args.g)
        data = profile.to_json_dict()
        lines = ["m=%d" % len(profile.partitions)]
        lines += [",".join(str(p) for p in mu) for mu in profile.partitions]
        _emit(config, data, lines)
        return 0
    if args.fph is not None:
        result = fph_profile(args.k, args.g, args.fph)
        data = result.to_json_dict()
        lines = [
            "m=%d" % result.m,
            "N=%d" % result.N,
            "special=%s" % (
                ",".join(str(p) for p in result.special)
                if result.special
                else "-"
            ),
        ]
        _emit(config, data, lines)
        return 0
    partitions = _parse_partitions(args.validate)
    profile = RamificationProfile(args.k, args.g, tuple(partitions))
    report = validate_profile(profile)
    data = report.to_json_dict()
    lines = ["ok" if report.ok else "deficit=%d bad=%s" % (
        report.deficit,
        ",".join(str(i) for i in report.bad_partitions) or "-",
    )]
    _emit(config, data, lines)
    return 0


def _cmd_bound(config, args):
    family = args.family
    params = args.params
    arity = {"plane": 1, "trig": 1, "tetra": 2, "generic": 2}[family]
    if len(params) != arity:
        raise UsageError(
            "bound %s expects %d integer parameter(s)" % (family, arity)
        )
    if family == "plane":
        genus, bound = plane_bound(params[0])
        data = {"family": family, "genus": genus, "bound": bound}
        lines = ["genus=%d bound=%d" % (genus, bound)]
    elif family == "trig":
        bound = trigonal_bound(params[0])
        data = {
            "family": family,
            "bound": bound,
            "sections": trigonal_sections(params[0]),
        }
        lines = [str(bound)]
    elif family == "tetra":
        g, f1 = params
        bound = tetragonal_bound(g, f1)
        data = {
            "family": family,
            "bound": bound,
            "summand_degrees": list(tetragonal_summand_degrees(g, f1)),
        }
        lines = [str(bound)]
    else:
        degree, g = params
        bound = independence_bound(LineBundleOnCurve(genus=g, degree=degree))
        data = {"family": family, "bound": bound}
        lines = [str(bound)]
    _emit(config, data, lines)
    return 0


def _parse_preset(text):
    head, sep, tail = text.partition(":")
    if not sep or not tail.lstrip("-").isdigit():
        raise UsageError(
            "preset must look like trig:G, tetra:G, or plane:D"
        )
    value = int(tail)
    if head == "trig":
        return trigonal_preset(value)
    if head == "tetra":
        return tetragonal_preset(value)
    if head == "plane":
        return plane_preset(value)
    raise UsageError("unknown preset family %r" % head)


def _cmd_reduce(config, args):
    preset = _parse_preset(args.preset)
    poly = parse_poly(args.expr, args.n)
    reduced = normal_form(poly, preset)
    _emit(config, reduced.to_json_dict(), [reduced.to_text()])
    return 0


# --- dispatch ----------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="strataforge",
        description="Stable-graph, grid-filling, ramification, bound, "
        "and rewriting tools for moduli of curves.",
    )
    parser.add_argument(
        "--format", choices=("json", "text"), default="text",
        help="output format (default text)",
    )
    parser.add_argument(
        "--cap", type=int, default=None,
        help="complexity cap for enumerations "
        "(default 12, or STRATAFORGE_CAP)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphs", help="enumerate stable graphs for (g, n)")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--compact-type", action="store_true")
    p.add_argument("--rational-tails", action="store_true")
    p.add_argument("--no-separating-edge", action="store_true")
    p.add_argument("--max-edges", type=int, default=None)
    p.add_argument("--json", action="store_true",
                   help="emit full graph JSON instead of keys")
    p.set_defaults(func=_cmd_graphs)

    p = sub.add_parser("strata", help="enumerate decorated strata")
    p.add_argument("g", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--codim", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=_cmd_strata)

    p = sub.add_parser("fill", help="run the grid-filling engine")
    p.add_argument("--facts", default=None,
                   help="fact file path (default: the packaged facts)")
    p.add_argument("--chart", action="store_true")
    p.add_argument("--explain", nargs=3, metavar=("G", "N", "KIND"),
                   default=None)
    p.set_defaults(func=_cmd_fill)

    p = sub.add_parser("rh", help="ramification-profile tools")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--simple", action="store_true")
    group.add_argument("--fph", type=int, default=None, metavar="A")
    group.add_argument("--validate", default=None, metavar="PARTITIONS")
    p.set_defaults(func=_cmd_rh)

    p = sub.add_parser("bound", help="independence-criterion degree bounds")
    p.add_argument("family", choices=("plane", "trig", "tetra", "generic"))
    p.add_argument("params", nargs="+", type=int)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("reduce", help="normal-form a polynomial expression")
    p.add_argument("--preset", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("expr")
    p.set_defaults(func=_cmd_reduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = Config(
            cap=args.cap if args.cap is not None else _default_cap(),
            format=args.format,
        )
        return args.func(config, args)
    except UsageError as err:
        print("%s: %s" % (err.name, err), file=sys.stderr)
        return 2
    except StrataforgeError as err:
        print("%s: %s" % (err.name, err), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
