"""Spreading activation and the minimal learning layer.

Vertices carry an activity level: -1 blocked, 0 inactive, 1 active,
2 spreading.  A step first promotes every active vertex to spreading, then
lets every spreading vertex push its inactive out-neighbors (over all edge
kinds) to active.  Levels never decrease and blocked vertices never change,
so activity stabilizes within one step per vertex.

Learning is incremental attachment: a new vertex is adjoined to an existing
anchor by a single edge, and jointly active vertices acquire implication
links between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

from .dsl import _tokenize
from .errors import GraphError, ParseError
from .graph import ContextGraph, EdgeKind, VertexId
from .scale import Likeliness

__all__ = [
    "Activity",
    "ActivityMap",
    "spread",
    "adjoin_vertex",
    "learn_edges_on_coactivation",
    "run_activation_script",
]

# Freshly learned links default to "typical": most lexical knowledge is.
LEARNED_EDGE_GRADE = Likeliness.TYPICAL


class Activity(IntEnum):
    BLOCKED = -1
    INACTIVE = 0
    ACTIVE = 1
    SPREADING = 2


@dataclass(frozen=True)
class ActivityMap:
    """Total map from vertices to activity; unlisted vertices are inactive."""

    levels: dict[VertexId, Activity] = field(default_factory=dict)

    def level(self, v: VertexId) -> Activity:
        return self.levels.get(v, Activity.INACTIVE)

    def with_level(self, v: VertexId, level: Activity) -> "ActivityMap":
        new = dict(self.levels)
        new[v] = Activity(level)
        return ActivityMap(new)

    def active_vertices(self) -> set[VertexId]:
        """Vertices at level active or spreading."""
        return {v for v, a in self.levels.items() if a >= Activity.ACTIVE}


def spread(g: ContextGraph, act: ActivityMap, steps: int) -> ActivityMap:
    """Activity after the given number of synchronous steps.

    Per step: active vertices become spreading, then spreading vertices set
    each inactive out-neighbor to active.  Blocked vertices neither change
    nor receive activation.
    """
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    levels = {v: a for v, a in act.levels.items() if a != Activity.INACTIVE}
    for _ in range(steps):
        promoted = {
            v: (Activity.SPREADING if a == Activity.ACTIVE else a)
            for v, a in levels.items()
        }
        after = dict(promoted)
        for v, a in promoted.items():
            if a != Activity.SPREADING:
                continue
            for dst in g.out_neighbors(v):
                if promoted.get(dst, Activity.INACTIVE) == Activity.INACTIVE:
                    after[dst] = Activity.ACTIVE
        if after == levels:
            break
        levels = after
    return ActivityMap(levels)


def adjoin_vertex(
    g: ContextGraph, label: str, anchor: VertexId, kind: EdgeKind
) -> ContextGraph:
    """One-shot attachment of a new concept to a known one.

    Adds the vertex (reusing it if the label already exists) and a single
    edge from it to the anchor.  Implication edges created this way default
    to grade 5.
    """
    g.label(anchor)
    g, v = g.add_vertex(label)
    if v == anchor:
        raise GraphError(f"cannot adjoin {label!r} to itself")
    if kind is EdgeKind.IMPLICATION:
        return g.add_implication(v, anchor, LEARNED_EDGE_GRADE)
    return g.add_structural(v, anchor, kind)


def learn_edges_on_coactivation(g: ContextGraph, act: ActivityMap) -> ContextGraph:
    """Link every ordered pair of jointly active vertices.

    Missing implication edges between distinct vertices at level >= active
    are added at grade 5, in both directions; existing edges are untouched.
    """
    active = sorted(act.active_vertices())
    for u in active:
        for v in active:
            if u != v and g.implication_value(u, v) is None:
                g = g.add_implication(u, v, LEARNED_EDGE_GRADE)
    return g


# ---------------------------------------------------------------------------
# Activation scripts (CLI `learn` subcommand)
# ---------------------------------------------------------------------------

def run_activation_script(
    g: ContextGraph, script: str
) -> tuple[ContextGraph, ActivityMap]:
    """Run a line-oriented activation script against a graph.

    Commands: ``activate <label>`` (raise to active), ``block <label>``,
    ``step <n>`` (spread n steps), ``coactivate`` (learn links between the
    currently active vertices).  ``#`` comments and blank lines are ignored.
    """
    act = ActivityMap()
    for lineno, line in enumerate(script.splitlines(), start=1):
        tokens = _tokenize(line, lineno)
        if not tokens:
            continue
        command, args = tokens[0], tokens[1:]
        if command.text in ("activate", "block") and not command.quoted:
            if len(args) != 1:
                raise ParseError(
                    f"{command.text} takes exactly one label",
                    lineno, command.column,
                )
            v = g.vertex(args[0].text)
            if command.text == "activate":
                level = max(act.level(v), Activity.ACTIVE)
            else:
                level = Activity.BLOCKED
            act = act.with_level(v, Activity(level))
        elif command.text == "step" and not command.quoted:
            if len(args) != 1 or not args[0].text.isdigit():
                raise ParseError(
                    "step takes a nonnegative count", lineno, command.column
                )
            act = spread(g, act, int(args[0].text))
        elif command.text == "coactivate" and not command.quoted:
            if args:
                raise ParseError(
                    "coactivate takes no arguments", lineno, args[0].column
                )
            g = learn_edges_on_coactivation(g, act)
        else:
            raise ParseError(
                f"unknown command {command.text!r}", lineno, command.column
            )
    return g, act
