"""Deriving implication grades that are not stored in the graph.

A chain of implications is only as strong as its weakest link, so the grade
carried by a path is the minimum of its edge grades.  The derived grade of
a -> b is the best such value over all paths: a widest-path (bottleneck)
problem in the (max, min) semiring.

A stored edge a -> b is authoritative: derivation is only invoked for pairs
without one.  The exhaustive simple-path enumeration used for testing lives
here too, next to the algorithm it checks.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import GraphError
from .graph import ContextGraph, VertexId
from .scale import Likeliness

__all__ = [
    "PathWitness",
    "path_likeliness",
    "derived_implication",
    "all_pairs_derived",
    "brute_force_derived",
    "explain",
]

BRUTE_FORCE_MAX_VERTICES = 12


@dataclass(frozen=True)
class PathWitness:
    """A simple implication path realizing a derived grade."""

    vertices: tuple[VertexId, ...]
    value: Likeliness

    def __post_init__(self) -> None:
        if len(self.vertices) < 2:
            raise GraphError("a path witness needs at least two vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("a path witness must be a simple path")


def path_likeliness(g: ContextGraph, vertices: Sequence[VertexId]) -> Likeliness:
    """Grade of an explicit path: the minimum of its edge grades."""
    if len(vertices) < 2:
        raise GraphError("a path needs at least two vertices")
    best = Likeliness.NECESSARY
    for src, dst in zip(vertices, vertices[1:]):
        value = g.implication_value(src, dst)
        if value is None:
            raise GraphError(
                f"no implication edge {g.label(src)} -> {g.label(dst)}"
            )
        best = min(best, value)
    return Likeliness(best)


def _widest_from(g: ContextGraph, source: VertexId) -> dict[VertexId, int]:
    """Best bottleneck grade from source to every reachable vertex.

    Best-first search relaxing on min(bottleneck so far, edge grade); runs
    in O(E log V).  The source itself is not included.
    """
    width: dict[VertexId, int] = {}
    # max-heap via negated widths; entries may go stale, skip them on pop
    frontier: list[tuple[int, VertexId]] = []
    for dst, value in g.out_implications(source):
        if int(value) > width.get(dst, -1):
            width[dst] = int(value)
            heapq.heappush(frontier, (-int(value), dst))
    done: set[VertexId] = set()
    while frontier:
        neg, v = heapq.heappop(frontier)
        if v in done or -neg < width[v]:
            continue
        done.add(v)
        for dst, value in g.out_implications(v):
            if dst == source:
                continue
            w = min(-neg, int(value))
            if w > width.get(dst, -1):
                width[dst] = w
                heapq.heappush(frontier, (-w, dst))
    return width


def _lexmin_shortest_path(
    g: ContextGraph, a: VertexId, b: VertexId, floor: int
) -> tuple[VertexId, ...]:
    """Shortest a->b path using only edges of grade >= floor, ties broken by
    the lexicographically smallest label sequence."""
    # hop counts from b backwards over allowed edges
    dist_to_b: dict[VertexId, int] = {b: 0}
    layer = [b]
    while layer:
        nxt = []
        for v in layer:
            for src, value in g.in_implications(v):
                if int(value) >= floor and src not in dist_to_b:
                    dist_to_b[src] = dist_to_b[v] + 1
                    nxt.append(src)
        layer = nxt
    if a not in dist_to_b:
        raise GraphError(f"no qualifying path {g.label(a)} -> {g.label(b)}")

    # walk forward, always taking the smallest label that stays on a
    # shortest route; shortest paths are automatically simple
    path = [a]
    current = a
    remaining = dist_to_b[a]
    while current != b:
        candidates = [
            dst
            for dst, value in g.out_implications(current)
            if int(value) >= floor and dist_to_b.get(dst) == remaining - 1
        ]
        current = min(candidates, key=g.label)
        path.append(current)
        remaining -= 1
    return tuple(path)


def derived_implication(
    g: ContextGraph, a: VertexId, b: VertexId
) -> tuple[Likeliness, PathWitness | None]:
    """Grade of the implication a -> b, with a witnessing path.

    A stored edge wins outright and is witnessed by itself.  Otherwise the
    value is the best bottleneck over all simple paths, witnessed by a
    maximizing path (shortest first, then smallest label sequence); an
    unreachable target scores 0 with no witness.
    """
    g.label(a)
    g.label(b)
    if a == b:
        raise GraphError("self-implication queries are undefined")
    stored = g.implication_value(a, b)
    if stored is not None:
        return stored, PathWitness((a, b), stored)
    width = _widest_from(g, a)
    if b not in width:
        return Likeliness.IMPOSSIBLE, None
    value = Likeliness(width[b])
    witness = PathWitness(_lexmin_shortest_path(g, a, b, int(value)), value)
    return value, witness


def all_pairs_derived(g: ContextGraph) -> list[list[Likeliness]]:
    """Matrix of derived grades for every ordered vertex pair.

    Computed by all-pairs relaxation with (max, min) in place of (min, +),
    then overlaying stored edge grades, which are authoritative.  The
    diagonal is fixed at 6 purely as a matrix convention; self-implication
    is not otherwise defined.
    """
    n = g.vertex_count
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 6
        for j, value in g.out_implications(i):
            m[i][j] = int(value)
    for k in range(n):
        mk = m[k]
        for i in range(n):
            mi = m[i]
            w_ik = mi[k]
            if w_ik == 0 or i == k:
                continue
            for j in range(n):
                w = w_ik if w_ik < mk[j] else mk[j]
                if w > mi[j]:
                    mi[j] = w
    for i in range(n):
        for j, value in g.out_implications(i):
            m[i][j] = int(value)
    return [[Likeliness(x) for x in row] for row in m]


def brute_force_derived(
    g: ContextGraph,
    a: VertexId,
    b: VertexId,
    stored_edge_wins: bool = True,
) -> Likeliness:
    """Derived grade by exhaustive enumeration of simple paths.

    Test oracle only; guarded to small graphs.  By default it mirrors
    derived_implication, including the stored-edge-wins rule; with
    stored_edge_wins=False it is the raw best-bottleneck-over-paths value,
    which is what source propagation composes with.
    """
    n = g.vertex_count
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise GraphError(
            f"brute force is guarded to {BRUTE_FORCE_MAX_VERTICES} vertices, "
            f"graph has {n}"
        )
    g.label(a)
    g.label(b)
    if a == b:
        raise GraphError("self-implication queries are undefined")
    if stored_edge_wins:
        stored = g.implication_value(a, b)
        if stored is not None:
            return stored

    best = 0
    on_path = {a}

    def walk(v: VertexId, bottleneck: int) -> None:
        nonlocal best
        if v == b:
            best = max(best, bottleneck)
            return
        for dst, value in g.out_implications(v):
            if dst in on_path:
                continue
            on_path.add(dst)
            walk(dst, min(bottleneck, int(value)))
            on_path.discard(dst)

    walk(a, 6)
    return Likeliness(best)


def explain(g: ContextGraph, a: VertexId, b: VertexId) -> str:
    """Human-readable derivation chain, e.g.

        Snowbird -(5)-> skiing -(4)-> ski-accident -(3)-> death : 3

    or "no path" when the target is unreachable.
    """
    value, witness = derived_implication(g, a, b)
    if witness is None:
        return "no path"
    parts = [g.label(witness.vertices[0])]
    for src, dst in zip(witness.vertices, witness.vertices[1:]):
        grade = g.implication_value(src, dst)
        parts.append(f"-({int(grade)})-> {g.label(dst)}")
    return " ".join(parts) + f" : {int(value)}"
