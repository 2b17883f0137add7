"""Line-oriented text format for context graphs and scenarios.

Grammar (UTF-8, one directive per line, ``#`` starts a comment, tokens are
whitespace-separated, labels containing spaces are double-quoted):

    node <label>
    edge <label> -> <label> : <grade 0..6>
    0edge <label> -> <label>            # isa link, unvalued
    1edge <label> -> <label>            # subject link
    2edge <label> -> <label>            # object link
    fact <label> = <grade>              # base valuation entry

    scenario <name>
      observe <label> = <grade>         # evidence that propagates
      clamp <label> = <grade>           # unconditional override
      exclude <label> -> <label> : <floor 0..2>
    end

Vertices are created implicitly by any directive that mentions them, except
inside scenario blocks, where labels must refer to vertices declared by the
context part (scenarios are evidence about a graph, not part of it).
Serialization is deterministic and round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError, ParseError
from .graph import ContextGraph, EdgeKind, Valuation
from .scale import Likeliness
from .update import Evidence, EvidenceMode, Exclusion, Scenario

__all__ = [
    "Document",
    "parse_context",
    "parse_scenarios",
    "parse_document",
    "serialize_context",
    "export_dot",
]

_STRUCTURAL_DIRECTIVES = {
    "0edge": EdgeKind.IS0,
    "1edge": EdgeKind.SUBJ1,
    "2edge": EdgeKind.OBJ2,
}


@dataclass(frozen=True)
class Document:
    """Parsed file: the context graph plus any scenario blocks, in order."""

    graph: ContextGraph
    scenarios: dict[str, Scenario]


@dataclass(frozen=True)
class _Token:
    text: str
    column: int
    quoted: bool


def _tokenize(line: str, lineno: int) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t":
            i += 1
        elif ch == "#":
            break
        elif ch == '"':
            end = line.find('"', i + 1)
            if end < 0:
                raise ParseError("unterminated quoted label", lineno, i + 1)
            tokens.append(_Token(line[i + 1:end], i + 1, quoted=True))
            i = end + 1
        else:
            start = i
            while i < n and line[i] not in ' \t"#':
                i += 1
            tokens.append(_Token(line[start:i], start + 1, quoted=False))
    return tokens


class _LineParser:
    """Positional checks over one tokenized directive line."""

    def __init__(self, tokens: list[_Token], lineno: int):
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 1          # tokens[0] is the directive word
        self.last_column = tokens[0].column

    def _take(self, what: str) -> _Token:
        if self.pos >= len(self.tokens):
            col = self.tokens[-1].column + len(self.tokens[-1].text)
            raise ParseError(f"expected {what}", self.lineno, col)
        tok = self.tokens[self.pos]
        self.pos += 1
        self.last_column = tok.column
        return tok

    def label(self, what: str = "label") -> str:
        tok = self._take(what)
        if not tok.text:
            raise ParseError(f"empty {what}", self.lineno, tok.column)
        return tok.text

    def literal(self, text: str) -> None:
        tok = self._take(f"{text!r}")
        if tok.quoted or tok.text != text:
            raise ParseError(
                f"expected {text!r}, got {tok.text!r}", self.lineno, tok.column
            )

    def grade(self, low: int = 0, high: int = 6) -> Likeliness:
        tok = self._take(f"grade {low}..{high}")
        try:
            value = int(tok.text)
        except ValueError:
            raise ParseError(
                f"expected grade {low}..{high}, got {tok.text!r}",
                self.lineno,
                tok.column,
            ) from None
        if not low <= value <= high:
            raise ParseError(
                f"grade {value} out of range {low}..{high}",
                self.lineno,
                tok.column,
            )
        return Likeliness(value)

    def end(self) -> None:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            raise ParseError(
                f"unexpected trailing token {tok.text!r}", self.lineno, tok.column
            )


@dataclass
class _ScenarioDraft:
    name: str
    lineno: int
    observes: list[tuple[str, Likeliness, int]]
    clamps: list[tuple[str, Likeliness, int]]
    excludes: list[tuple[str, str, Likeliness, int]]


class _Builder:
    """Single-pass accumulator; produces one immutable graph at the end."""

    def __init__(self, base: ContextGraph | None):
        if base is None:
            self.labels: list[str] = []
            self.impl: dict[tuple[int, int], Likeliness] = {}
            self.structural: set[tuple[int, int, EdgeKind]] = set()
            self.facts: dict[int, Likeliness] = {}
        else:
            self.labels = list(base.labels())
            self.impl = {
                (s, d): v
                for s in range(base.vertex_count)
                for d, v in base.out_implications(s)
            }
            self.structural = {
                (e.src, e.dst, e.kind)
                for e in base.edges()
                if e.kind is not EdgeKind.IMPLICATION
            }
            self.facts = dict(base.base_valuation)
        self.index = {lbl: i for i, lbl in enumerate(self.labels)}

    def vertex(self, label: str, lineno: int, column: int) -> int:
        if '"' in label or "\n" in label:
            raise ParseError(
                f"invalid label {label!r}", lineno, column
            )
        if label not in self.index:
            self.index[label] = len(self.labels)
            self.labels.append(label)
        return self.index[label]

    def graph(self) -> ContextGraph:
        return ContextGraph(
            tuple(self.labels), self.impl, frozenset(self.structural), self.facts
        )


def parse_document(text: str, base: ContextGraph | None = None) -> Document:
    """Parse a context/scenario file.

    ``base`` lets a second file (e.g. a separate scenarios file) extend an
    already parsed graph; scenario labels resolve against the final graph.
    """
    builder = _Builder(base)
    drafts: list[_ScenarioDraft] = []
    current: _ScenarioDraft | None = None

    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(line, lineno)
        if not tokens:
            continue
        lp = _LineParser(tokens, lineno)
        head = tokens[0]
        directive = head.text if not head.quoted else None

        if current is not None:
            if directive == "observe" or directive == "clamp":
                label = lp.label()
                column = lp.last_column
                lp.literal("=")
                grade = lp.grade()
                lp.end()
                entry = (label, grade, column)
                (current.observes if directive == "observe"
                 else current.clamps).append(entry)
            elif directive == "exclude":
                cond = lp.label("condition label")
                column = lp.last_column
                lp.literal("->")
                target = lp.label("target label")
                lp.literal(":")
                floor = lp.grade(0, 2)
                lp.end()
                current.excludes.append((cond, target, floor, column))
            elif directive == "end":
                lp.end()
                drafts.append(current)
                current = None
            elif directive == "scenario":
                raise ParseError(
                    f"scenario {current.name!r} not closed before a new one",
                    lineno, head.column,
                )
            else:
                raise ParseError(
                    f"only observe/clamp/exclude/end allowed inside a "
                    f"scenario, got {head.text!r}",
                    lineno, head.column,
                )
            continue

        if directive == "node":
            label = lp.label()
            column = lp.last_column
            lp.end()
            builder.vertex(label, lineno, column)
        elif directive == "edge":
            src_label = lp.label("source label")
            column = lp.last_column
            lp.literal("->")
            dst_label = lp.label("target label")
            lp.literal(":")
            grade = lp.grade()
            lp.end()
            src = builder.vertex(src_label, lineno, column)
            dst = builder.vertex(dst_label, lineno, column)
            if src == dst:
                raise ParseError(
                    f"implication self-loop on {src_label!r}", lineno, column
                )
            old = builder.impl.get((src, dst))
            if old is not None and old != grade:
                raise ParseError(
                    f"contradictory re-declaration of edge "
                    f"{src_label} -> {dst_label}: {int(old)} vs {int(grade)}",
                    lineno, column,
                )
            builder.impl[(src, dst)] = grade
        elif directive in _STRUCTURAL_DIRECTIVES:
            src_label = lp.label("source label")
            column = lp.last_column
            lp.literal("->")
            dst_label = lp.label("target label")
            lp.end()
            src = builder.vertex(src_label, lineno, column)
            dst = builder.vertex(dst_label, lineno, column)
            builder.structural.add((src, dst, _STRUCTURAL_DIRECTIVES[directive]))
        elif directive == "fact":
            label = lp.label()
            column = lp.last_column
            lp.literal("=")
            grade = lp.grade()
            lp.end()
            v = builder.vertex(label, lineno, column)
            old = builder.facts.get(v)
            if old is not None and old != grade:
                raise ParseError(
                    f"contradictory re-declaration of fact {label}: "
                    f"{int(old)} vs {int(grade)}",
                    lineno, column,
                )
            builder.facts[v] = grade
        elif directive == "scenario":
            name = lp.label("scenario name")
            lp.end()
            current = _ScenarioDraft(name, lineno, [], [], [])
        elif directive == "end":
            raise ParseError("'end' outside a scenario block", lineno, head.column)
        else:
            raise ParseError(
                f"unknown directive {head.text!r}", lineno, head.column
            )

    if current is not None:
        raise ParseError(
            f"scenario {current.name!r} is never closed ('end' missing)",
            current.lineno, 1,
        )

    graph = builder.graph()
    scenarios: dict[str, Scenario] = {}
    for draft in drafts:
        if draft.name in scenarios:
            raise ParseError(
                f"duplicate scenario name {draft.name!r}", draft.lineno, 1
            )
        evidence = []
        seen: set[int] = set()
        for mode, entries in (
            (EvidenceMode.SOURCE, draft.observes),
            (EvidenceMode.CLAMP, draft.clamps),
        ):
            for label, grade, column in entries:
                v = _resolve(graph, label, draft.lineno, column)
                if v in seen:
                    raise ParseError(
                        f"duplicate evidence on {label!r} in scenario "
                        f"{draft.name!r}", draft.lineno, column,
                    )
                seen.add(v)
                evidence.append(Evidence(v, grade, mode))
        exclusions = tuple(
            Exclusion(
                _resolve(graph, cond, draft.lineno, column),
                _resolve(graph, target, draft.lineno, column),
                floor,
            )
            for cond, target, floor, column in draft.excludes
        )
        scenarios[draft.name] = Scenario(draft.name, tuple(evidence), exclusions)
    return Document(graph=graph, scenarios=scenarios)


def _resolve(graph: ContextGraph, label: str, lineno: int, column: int) -> int:
    try:
        return graph.vertex(label)
    except GraphError:
        raise ParseError(
            f"scenario refers to unknown vertex {label!r}", lineno, column
        ) from None


def parse_context(text: str) -> ContextGraph:
    """Parse a context file; scenario blocks are validated but dropped."""
    return parse_document(text).graph


def parse_scenarios(
    text: str, graph: ContextGraph | None = None
) -> dict[str, Scenario]:
    """Parse scenario blocks, resolving labels against ``graph`` if given."""
    return parse_document(text, base=graph).scenarios


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _format_label(label: str) -> str:
    if any(c in label for c in ' \t#"') or not label:
        return f'"{label}"'
    return label


def serialize_context(g: ContextGraph) -> str:
    """Deterministic text form: header, vertices, edges, facts, each sorted
    by label.  Parsing the output reproduces the graph exactly."""
    lines = [
        f"# likeliness context: {g.vertex_count} vertices, "
        f"{g.implication_count} implication edges"
    ]
    for label in sorted(g.labels()):
        lines.append(f"node {_format_label(label)}")
    structural = []
    for edge in g.edges():
        src, dst = _format_label(g.label(edge.src)), _format_label(g.label(edge.dst))
        if edge.kind is EdgeKind.IMPLICATION:
            lines.append(f"edge {src} -> {dst} : {int(edge.value)}")
        else:
            structural.append(f"{edge.kind.value}edge {src} -> {dst}")
    lines.extend(structural)
    for v, grade in sorted(
        g.base_valuation.items(), key=lambda item: g.label(item[0])
    ):
        lines.append(f"fact {_format_label(g.label(v))} = {int(grade)}")
    return "\n".join(lines) + "\n"


def export_dot(g: ContextGraph, valuation: Valuation | None = None) -> str:
    """Graphviz rendering.  Implication edges carry their grade as label;
    structural edges are dashed; valued vertices show "name (grade)"."""
    lines = ["digraph {"]
    val = valuation or {}
    for label in sorted(g.labels()):
        v = g.vertex(label)
        if v in val:
            lines.append(f'  "{label}" [label="{label} ({int(val[v])})"];')
        else:
            lines.append(f'  "{label}";')
    for edge in g.edges():
        src, dst = g.label(edge.src), g.label(edge.dst)
        if edge.kind is EdgeKind.IMPLICATION:
            lines.append(f'  "{src}" -> "{dst}" [label="{int(edge.value)}"];')
        else:
            lines.append(
                f'  "{src}" -> "{dst}" [label="{edge.kind.value}", style=dashed];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
