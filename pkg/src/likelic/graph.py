"""Directed proposition graphs with graded implication edges.

A context graph holds labelled proposition vertices, implication edges
carrying a likeliness grade, unvalued structural edges (isa / subject /
object links), and an optional base valuation assigning default grades to
some vertices.

Graphs are immutable snapshots: every mutating operation returns a fresh
graph and leaves its input untouched, so propagation and learning code can
share graphs freely across threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

from .errors import GraphError
from .scale import Likeliness

__all__ = [
    "VertexId",
    "EdgeKind",
    "Edge",
    "ContextGraph",
    "Valuation",
    "ImplicationOverwriteWarning",
]

VertexId = int
# Partial assignment of grades to vertices: the mutable belief state.
Valuation = dict[VertexId, Likeliness]


class EdgeKind(Enum):
    """Edge flavours: graded implications plus the three structural links."""

    IMPLICATION = "implication"
    IS0 = "0"        # is / isa
    SUBJ1 = "1"      # subject
    OBJ2 = "2"       # object


STRUCTURAL_KINDS = (EdgeKind.IS0, EdgeKind.SUBJ1, EdgeKind.OBJ2)


class ImplicationOverwriteWarning(UserWarning):
    """Re-declaring an implication edge replaces a stored inner-model value."""


@dataclass(frozen=True)
class Edge:
    """A directed edge.  Only implication edges carry a grade."""

    src: VertexId
    dst: VertexId
    kind: EdgeKind
    value: Likeliness | None = None

    def __post_init__(self) -> None:
        if self.kind is EdgeKind.IMPLICATION:
            if self.value is None:
                raise GraphError("implication edge requires a grade")
            if self.src == self.dst:
                raise GraphError("implication edge may not be a self-loop")
        elif self.value is not None:
            raise GraphError(f"{self.kind.name} edge may not carry a grade")


def _check_label(label: str) -> None:
    if not label:
        raise GraphError("vertex label must be nonempty")
    if "\n" in label or "\r" in label:
        raise GraphError("vertex label may not contain newlines")
    if '"' in label:
        raise GraphError('vertex label may not contain a double quote')


class ContextGraph:
    """Immutable snapshot of a proposition graph.

    Vertices are dense integer ids in insertion order; labels are unique.
    At most one implication edge exists per ordered vertex pair; structural
    edges are kept as a set.
    """

    __slots__ = ("_labels", "_index", "_impl_out", "_impl_in",
                 "_structural", "_facts")

    def __init__(
        self,
        labels: tuple[str, ...] = (),
        implications: Mapping[tuple[VertexId, VertexId], Likeliness] | None = None,
        structural: frozenset[tuple[VertexId, VertexId, EdgeKind]] | None = None,
        facts: Mapping[VertexId, Likeliness] | None = None,
    ):
        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        if len(self._index) != len(labels):
            raise GraphError("duplicate vertex labels")
        n = len(labels)
        impl_out: dict[VertexId, dict[VertexId, Likeliness]] = {}
        impl_in: dict[VertexId, dict[VertexId, Likeliness]] = {}
        for (src, dst), value in (implications or {}).items():
            self._check_vertex(src, n)
            self._check_vertex(dst, n)
            impl_out.setdefault(src, {})[dst] = Likeliness(value)
            impl_in.setdefault(dst, {})[src] = Likeliness(value)
            Edge(src, dst, EdgeKind.IMPLICATION, Likeliness(value))
        self._impl_out = impl_out
        self._impl_in = impl_in
        structural = structural or frozenset()
        for src, dst, kind in structural:
            self._check_vertex(src, n)
            self._check_vertex(dst, n)
            if kind not in STRUCTURAL_KINDS:
                raise GraphError(f"not a structural edge kind: {kind}")
        self._structural = structural
        facts = dict(facts or {})
        for v, grade in facts.items():
            self._check_vertex(v, n)
            facts[v] = Likeliness(grade)
        self._facts = facts

    @staticmethod
    def _check_vertex(v: VertexId, n: int) -> None:
        if not 0 <= v < n:
            raise GraphError(f"unknown vertex id {v}")

    # -- queries ------------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._labels)

    def labels(self) -> tuple[str, ...]:
        return self._labels

    def label(self, v: VertexId) -> str:
        self._check_vertex(v, len(self._labels))
        return self._labels[v]

    def vertex(self, label: str) -> VertexId:
        """Id of the vertex with this label; raises GraphError if absent."""
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def has_vertex(self, label: str) -> bool:
        return label in self._index

    def implication_value(self, src: VertexId, dst: VertexId) -> Likeliness | None:
        """Stored grade of the implication src -> dst, or None."""
        return self._impl_out.get(src, {}).get(dst)

    def out_implications(self, src: VertexId) -> Iterator[tuple[VertexId, Likeliness]]:
        yield from self._impl_out.get(src, {}).items()

    def in_implications(self, dst: VertexId) -> Iterator[tuple[VertexId, Likeliness]]:
        yield from self._impl_in.get(dst, {}).items()

    def out_neighbors(self, src: VertexId) -> set[VertexId]:
        """Successors over every edge kind, implication and structural alike."""
        out = set(self._impl_out.get(src, {}))
        out.update(d for s, d, _ in self._structural if s == src)
        return out

    def edges(self) -> Iterator[Edge]:
        """All edges, implications first, in a deterministic label order."""
        by_label = lambda pair: (self._labels[pair[0]], self._labels[pair[1]])
        impl = [(s, d) for s, outs in self._impl_out.items() for d in outs]
        for s, d in sorted(impl, key=by_label):
            yield Edge(s, d, EdgeKind.IMPLICATION, self._impl_out[s][d])
        for s, d, kind in sorted(
            self._structural,
            key=lambda e: (e[2].value, self._labels[e[0]], self._labels[e[1]]),
        ):
            yield Edge(s, d, kind)

    @property
    def implication_count(self) -> int:
        return sum(len(outs) for outs in self._impl_out.values())

    @property
    def base_valuation(self) -> Valuation:
        """Copy of the default grades declared on vertices."""
        return dict(self._facts)

    # -- pure "mutators" ----------------------------------------------------

    def _parts(self):
        impl = {(s, d): v for s, outs in self._impl_out.items()
                for d, v in outs.items()}
        return self._labels, impl, self._structural, dict(self._facts)

    def add_vertex(self, label: str) -> tuple["ContextGraph", VertexId]:
        """Graph with the vertex present, plus its id.

        Adding an existing label is a no-op returning the existing id.
        """
        _check_label(label)
        if label in self._index:
            return self, self._index[label]
        labels, impl, structural, facts = self._parts()
        return (
            ContextGraph(labels + (label,), impl, structural, facts),
            len(labels),
        )

    def add_implication(
        self, src: VertexId, dst: VertexId, value: Likeliness | int
    ) -> "ContextGraph":
        """Graph with the implication src -> dst at the given grade.

        Replacing an existing grade is allowed but warns: stored implication
        values are the slowly-changing inner model.
        """
        n = len(self._labels)
        self._check_vertex(src, n)
        self._check_vertex(dst, n)
        if src == dst:
            raise GraphError(
                f"implication self-loop on {self._labels[src]!r} rejected"
            )
        value = Likeliness(value)
        labels, impl, structural, facts = self._parts()
        old = impl.get((src, dst))
        if old is not None and old != value:
            warnings.warn(
                f"implication {self._labels[src]} -> {self._labels[dst]} "
                f"overwritten: {int(old)} -> {int(value)}",
                ImplicationOverwriteWarning,
                stacklevel=2,
            )
        impl[(src, dst)] = value
        return ContextGraph(labels, impl, structural, facts)

    def add_structural(
        self, src: VertexId, dst: VertexId, kind: EdgeKind
    ) -> "ContextGraph":
        """Graph with an unvalued structural edge of the given kind."""
        n = len(self._labels)
        self._check_vertex(src, n)
        self._check_vertex(dst, n)
        if kind not in STRUCTURAL_KINDS:
            raise GraphError(f"not a structural edge kind: {kind}")
        labels, impl, structural, facts = self._parts()
        return ContextGraph(
            labels, impl, structural | {(src, dst, kind)}, facts
        )

    def with_fact(self, v: VertexId, grade: Likeliness | int) -> "ContextGraph":
        """Graph with a base-valuation entry for vertex v."""
        self._check_vertex(v, len(self._labels))
        labels, impl, structural, facts = self._parts()
        facts[v] = Likeliness(grade)
        return ContextGraph(labels, impl, structural, facts)

    # -- equality is semantic: same labelled vertices, edges and facts ------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContextGraph):
            return NotImplemented
        return self._labelled_form() == other._labelled_form()

    def _labelled_form(self):
        lab = self._labels
        impl = frozenset(
            (lab[s], lab[d], int(v))
            for s, outs in self._impl_out.items()
            for d, v in outs.items()
        )
        struct = frozenset((lab[s], lab[d], k) for s, d, k in self._structural)
        facts = frozenset((lab[v], int(g)) for v, g in self._facts.items())
        return frozenset(lab), impl, struct, facts

    def __hash__(self) -> int:
        return hash(self._labelled_form())

    def __repr__(self) -> str:
        return (
            f"<ContextGraph {len(self._labels)} vertices, "
            f"{self.implication_count} implications, "
            f"{len(self._structural)} structural edges>"
        )
