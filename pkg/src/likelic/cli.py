"""Command-line front end.

Subcommands: infer, explain, allpairs, propagate, scenario, scale, learn,
export-dot, demo-dice.  Results go to stdout, diagnostics to stderr; exit
status is 0 on success, 1 on domain errors (bad queries), 2 on usage or
file-syntax errors.  Output is deterministic: fixed sort orders, no
timestamps.  ``--format json`` (where offered) emits sorted-key JSON whose
re-rendering is byte-identical.

The probability base for the ``scale`` subcommand defaults to 1e-9 (the
proverbial one-in-a-billion) and can be overridden with the LIKELIC_BASE
environment variable or ``--base``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .activation import run_activation_script
from .dsl import export_dot, parse_document, serialize_context
from .errors import LikelicError, ParseError
from .graph import ContextGraph
from .inference import all_pairs_derived, derived_implication, explain
from .scale import (
    Likeliness,
    aggregation_capacity,
    boundaries,
    likeliness_from_probability,
)
from .update import (
    Evidence,
    EvidenceMode,
    PropagationMode,
    compare_scenarios,
    propagate,
)

DEFAULT_BASE = 1e-9
BASE_ENV_VAR = "LIKELIC_BASE"

# The four dice wagers that started probability theory: at least one 6 in
# four rolls, at least one double-6 in 24 throws of a pair, at least two 6s
# with 12 dice, at least three 6s with 18 dice.
DICE_WAGERS = (
    ("de Méré A", 0.5177),
    ("de Méré B", 0.4914),
    ("Pepys A", 0.6187),
    ("Pepys B", 0.5973),
)


def _grade_text(grade: Likeliness) -> str:
    return f"{int(grade)} ({grade.canonical_name})"


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _source_spec(text: str) -> tuple[str, int]:
    label, sep, grade = text.rpartition("=")
    if not sep or not label:
        raise argparse.ArgumentTypeError(
            f"expected LABEL=GRADE, got {text!r}"
        )
    try:
        value = int(grade)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grade must be an integer 0..6, got {grade!r}"
        ) from None
    if not 0 <= value <= 6:
        raise argparse.ArgumentTypeError(f"grade {value} out of range 0..6")
    return label, value


def _base_probability(args: argparse.Namespace) -> float:
    if args.base is not None:
        return args.base
    raw = os.environ.get(BASE_ENV_VAR)
    if raw is None:
        return DEFAULT_BASE
    try:
        return float(raw)
    except ValueError:
        raise ValueError(
            f"{BASE_ENV_VAR} must be a number, got {raw!r}"
        ) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="likelic",
        description="Graded likeliness calculus on proposition graphs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_context(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--context", required=True, metavar="FILE",
                       help="context file to load")
        return p

    p = with_context(sub.add_parser(
        "infer", help="derived grade of an implication, with its chain"))
    p.add_argument("--from", dest="src", required=True, metavar="LABEL")
    p.add_argument("--to", dest="dst", required=True, metavar="LABEL")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = with_context(sub.add_parser(
        "explain", help="the chain behind a derived implication"))
    p.add_argument("--from", dest="src", required=True, metavar="LABEL")
    p.add_argument("--to", dest="dst", required=True, metavar="LABEL")

    p = with_context(sub.add_parser(
        "allpairs", help="derived grades for every vertex pair"))
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = with_context(sub.add_parser(
        "propagate", help="push evidence about one vertex through the graph"))
    p.add_argument("--source", required=True, metavar="LABEL=GRADE",
                   type=_source_spec)
    p.add_argument("--mode", choices=("fixpoint", "wavefront"),
                   default="fixpoint")

    p = with_context(sub.add_parser(
        "scenario", help="compare scenario outcomes side by side"))
    p.add_argument("--scenarios", metavar="FILE",
                   help="extra file with scenario blocks")
    p.add_argument("--compare", required=True, metavar="NAME[,NAME...]",
                   help="columns; 'default' names the unconditioned column")
    p.add_argument("--rows", metavar="LABEL[,LABEL...]",
                   help="vertices to show (default: all valued vertices)")
    p.add_argument("--mode", choices=("fixpoint", "wavefront"),
                   default="fixpoint")

    p = sub.add_parser(
        "scale", help="probability/grade conversions and capacities")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--prob", type=float, metavar="P",
                       help="grade of this probability")
    group.add_argument("--boundaries", action="store_true",
                       help="print the six cut points")
    group.add_argument("--capacity", type=int, metavar="GRADE",
                       help="events of this grade needed to reach the next")
    p.add_argument("--base", type=float, metavar="B",
                   help=f"base threshold (default {BASE_ENV_VAR} or 1e-9)")

    p = with_context(sub.add_parser(
        "learn", help="run an activation script and emit the learned graph"))
    p.add_argument("--script", required=True, metavar="FILE")

    p = with_context(sub.add_parser(
        "export-dot", help="Graphviz rendering of a context"))
    p.add_argument("--valuation", metavar="FILE",
                   help="fact file assigning grades to show on vertices")

    sub.add_parser(
        "demo-dice",
        help="the four historical dice wagers on the likeliness scale")
    return parser


# ---------------------------------------------------------------------------
# Subcommand bodies
# ---------------------------------------------------------------------------

def _load_graph(path: str) -> ContextGraph:
    return parse_document(_read(path)).graph


def _cmd_infer(args) -> int:
    g = _load_graph(args.context)
    value, witness = derived_implication(g, g.vertex(args.src), g.vertex(args.dst))
    if args.format == "json":
        payload = {
            "from": args.src,
            "to": args.dst,
            "likeliness": int(value),
            "witness": (
                [g.label(v) for v in witness.vertices] if witness else None
            ),
        }
        sys.stdout.write(_json_dump(payload))
    else:
        print(_grade_text(value))
        print(explain(g, g.vertex(args.src), g.vertex(args.dst)))
    return 0


def _cmd_explain(args) -> int:
    g = _load_graph(args.context)
    print(explain(g, g.vertex(args.src), g.vertex(args.dst)))
    return 0


def _cmd_allpairs(args) -> int:
    g = _load_graph(args.context)
    matrix = all_pairs_derived(g)
    order = sorted(range(g.vertex_count), key=g.label)
    labels = [g.label(v) for v in order]
    if args.format == "json":
        payload = {
            "labels": labels,
            "matrix": [[int(matrix[i][j]) for j in order] for i in order],
        }
        sys.stdout.write(_json_dump(payload))
        return 0
    if not labels:
        return 0
    name_w = max(len(lbl) for lbl in labels)
    widths = [max(len(lbl), 1) for lbl in labels]
    header = " ".join(lbl.rjust(w) for lbl, w in zip(labels, widths))
    print(f"{'':<{name_w}} {header}")
    for i, lbl in zip(order, labels):
        cells = " ".join(
            str(int(matrix[i][j])).rjust(w) for j, w in zip(order, widths)
        )
        print(f"{lbl:<{name_w}} {cells}")
    return 0


def _cmd_propagate(args) -> int:
    g = _load_graph(args.context)
    label, grade = args.source
    evidence = Evidence(g.vertex(label), Likeliness(grade), EvidenceMode.SOURCE)
    valuation = propagate(g, evidence, PropagationMode(args.mode))
    for v in sorted(valuation, key=g.label):
        print(f"{g.label(v)}: {_grade_text(valuation[v])}")
    return 0


def _cmd_scenario(args) -> int:
    doc = parse_document(_read(args.context))
    graph, scenarios = doc.graph, dict(doc.scenarios)
    if args.scenarios:
        extra = parse_document(_read(args.scenarios), base=graph)
        graph = extra.graph
        for name, scenario in extra.scenarios.items():
            if name in scenarios:
                raise LikelicError(f"scenario {name!r} defined twice")
            scenarios[name] = scenario

    names = [n for n in args.compare.split(",") if n != "default"]
    missing = [n for n in names if n not in scenarios]
    if missing:
        raise LikelicError(f"unknown scenario {missing[0]!r}")
    chosen = [scenarios[n] for n in names]

    defaults = graph.base_valuation
    if args.rows:
        vertices = [graph.vertex(lbl) for lbl in args.rows.split(",")]
    else:
        table_probe = compare_scenarios(
            graph, defaults, chosen, list(range(graph.vertex_count)),
            PropagationMode(args.mode),
        )
        vertices = sorted(
            (graph.vertex(lbl) for lbl, vals in table_probe.rows
             if any(v is not None for v in vals)),
            key=graph.label,
        )
    table = compare_scenarios(
        graph, defaults, chosen, vertices, PropagationMode(args.mode)
    )
    for label, values in table.rows:
        cells = " ".join(
            "-" if v is None else str(int(v)) for v in values
        )
        print(f"{label}: {cells}")
    return 0


def _cmd_scale(args) -> int:
    bounds = boundaries(_base_probability(args))
    if args.boundaries:
        for k, cut in enumerate(bounds.cuts, start=1):
            print(f"c{k} = {cut!r}")
    elif args.capacity is not None:
        print(aggregation_capacity(bounds, args.capacity))
    else:
        print(_grade_text(likeliness_from_probability(args.prob, bounds)))
    return 0


def _cmd_learn(args) -> int:
    g = _load_graph(args.context)
    g, _ = run_activation_script(g, _read(args.script))
    sys.stdout.write(serialize_context(g))
    return 0


def _cmd_export_dot(args) -> int:
    g = _load_graph(args.context)
    valuation = None
    if args.valuation:
        fact_doc = parse_document(_read(args.valuation))
        facts = fact_doc.graph.base_valuation
        valuation = {
            g.vertex(fact_doc.graph.label(v)): grade
            for v, grade in facts.items()
        }
    sys.stdout.write(export_dot(g, valuation))
    return 0


def _cmd_demo_dice(args) -> int:
    bounds = boundaries(DEFAULT_BASE)
    grades = set()
    for name, p in DICE_WAGERS:
        grade = likeliness_from_probability(p, bounds)
        grades.add(grade)
        print(f"{name}: p={p} → l={_grade_text(grade)}")
    if len(grades) == 1:
        only = grades.pop()
        print(f"all four land on {_grade_text(only)}: "
              "the scale cannot tell them apart")
    return 0


_COMMANDS = {
    "infer": _cmd_infer,
    "explain": _cmd_explain,
    "allpairs": _cmd_allpairs,
    "propagate": _cmd_propagate,
    "scenario": _cmd_scenario,
    "scale": _cmd_scale,
    "learn": _cmd_learn,
    "export-dot": _cmd_export_dot,
    "demo-dice": _cmd_demo_dice,
}


def run(argv: Sequence[str]) -> int:
    """Parse argv and execute; returns the exit status without exiting."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"likelic: {exc}", file=sys.stderr)
        return 2
    except (LikelicError, ValueError, OSError) as exc:
        print(f"likelic: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
