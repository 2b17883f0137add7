"""Evidence-driven revaluation of vertices.

Learning that a proposition holds at some grade pushes consequences through
the implication graph.  Three propagation semantics are provided:

* FIXPOINT (default): a reachable vertex gets min(source grade, best
  bottleneck over all simple paths from the source).  Computed by monotone
  relaxation sweeps to a fixpoint; order-independent.
* WAVEFRONT: like FIXPOINT, except a direct stored edge from the source is
  authoritative for its target, even when an indirect chain scores higher.
  First-hand links beat hearsay; this is the variant that matches the
  worked ski-trip valuation.
* LITERAL: debug-only reading in which the source grade itself joins the
  max, so every reachable vertex scores at least the source grade.  Kept
  for comparison; not a default and not exposed on the command line.

On top of the monotone propagation core sits the defeasible layer: a
Scenario bundles evidence with exclusion rules (conditional demotions) and
clamps (unconditional overrides), which is what makes updates nonmonotonic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ScenarioError
from .graph import ContextGraph, Valuation, VertexId
from .inference import _widest_from
from .scale import Likeliness

__all__ = [
    "EvidenceMode",
    "Evidence",
    "Exclusion",
    "Scenario",
    "PropagationMode",
    "ScenarioTable",
    "propagate",
    "apply_scenario",
    "compare_scenarios",
]


class EvidenceMode(Enum):
    SOURCE = "source"   # participates in propagation
    CLAMP = "clamp"     # overrides the final value unconditionally


@dataclass(frozen=True)
class Evidence:
    vertex: VertexId
    value: Likeliness
    mode: EvidenceMode = EvidenceMode.SOURCE


@dataclass(frozen=True)
class Exclusion:
    """When the condition vertex ends at grade 6, cap the target at floor.

    Floors are restricted to 0..2: an exclusion expresses incompatibility,
    from logically ruled out (0) up to merely far-fetched (2).
    """

    condition: VertexId
    target: VertexId
    floor: Likeliness

    def __post_init__(self) -> None:
        if int(self.floor) > 2:
            raise ScenarioError(
                f"exclusion floor must be 0, 1 or 2, got {int(self.floor)}"
            )


@dataclass(frozen=True)
class Scenario:
    """Named bundle of evidence and exclusions, applied as one update."""

    name: str
    evidence: tuple[Evidence, ...] = ()
    exclusions: tuple[Exclusion, ...] = ()

    def __post_init__(self) -> None:
        seen: set[VertexId] = set()
        for ev in self.evidence:
            if ev.vertex in seen:
                raise ScenarioError(
                    f"scenario {self.name!r} has duplicate evidence on one vertex"
                )
            seen.add(ev.vertex)


class PropagationMode(Enum):
    FIXPOINT = "fixpoint"
    WAVEFRONT = "wavefront"
    LITERAL = "literal"   # debug only, see module docstring


def _fixpoint_reach(
    g: ContextGraph, source: VertexId, value: int
) -> tuple[dict[VertexId, int], int]:
    """Relaxation sweeps until stable.

    Returns per-vertex values min(value, best path bottleneck) for every
    vertex reachable from source (source included at ``value``), plus the
    number of sweeps taken.  Grades form a finite lattice and each
    relaxation only raises values, so at most 6*|V| sweeps change anything.
    """
    val: dict[VertexId, int] = {source: value}
    edges = [
        (s, d, int(v))
        for s in range(g.vertex_count)
        for d, v in g.out_implications(s)
    ]
    sweeps = 0
    changed = True
    while changed:
        changed = False
        sweeps += 1
        for s, d, grade in edges:
            if s not in val:
                continue
            w = min(val[s], grade)
            if w > val.get(d, -1):
                val[d] = w
                changed = True
    return val, sweeps


def _propagation_core(
    g: ContextGraph, source: VertexId, value: Likeliness, mode: PropagationMode
) -> dict[VertexId, int]:
    """Fresh values assigned by one source, before merging with any prior."""
    v = int(value)
    if mode is PropagationMode.FIXPOINT:
        out, _ = _fixpoint_reach(g, source, v)
        return out
    width = _widest_from(g, source)
    out = {source: v}
    if mode is PropagationMode.WAVEFRONT:
        for b, w in width.items():
            stored = g.implication_value(source, b)
            out[b] = min(v, int(stored) if stored is not None else w)
    elif mode is PropagationMode.LITERAL:
        for b, w in width.items():
            out[b] = max(v, w)
    else:
        raise ValueError(f"unknown propagation mode: {mode}")
    return out


def _merge_max(base: Valuation, new: dict[VertexId, int]) -> Valuation:
    merged = dict(base)
    for v, grade in new.items():
        old = merged.get(v)
        merged[v] = Likeliness(grade if old is None else max(int(old), grade))
    return merged


def propagate(
    g: ContextGraph,
    source: Evidence,
    mode: PropagationMode = PropagationMode.FIXPOINT,
    initial: Valuation | None = None,
) -> Valuation:
    """Valuation after asserting the source evidence.

    Every vertex reachable from the source is assigned per the chosen mode;
    the source itself gets its asserted grade.  Prior values (the graph's
    base valuation unless ``initial`` overrides it) are kept at the max of
    old and new: propagation alone never lowers anything.
    """
    if source.mode is not EvidenceMode.SOURCE:
        raise ScenarioError("propagate requires SOURCE evidence")
    g.label(source.vertex)
    prior = g.base_valuation if initial is None else initial
    return _merge_max(prior, _propagation_core(g, source.vertex, source.value, mode))


def apply_scenario(
    g: ContextGraph,
    defaults: Valuation,
    scenario: Scenario,
    mode: PropagationMode = PropagationMode.FIXPOINT,
) -> Valuation:
    """Condition a valuation on a scenario.

    Steps, in order: propagate every SOURCE evidence item and merge the
    results by max onto the defaults; apply exclusions whose condition
    vertex landed exactly at 6, capping their targets; apply CLAMP evidence
    last, unconditionally.  Max-merge is commutative and exclusion
    conditions are read from one post-propagation snapshot, so evidence
    order never matters, and reapplying the same scenario is a no-op.
    """
    for ev in scenario.evidence:
        g.label(ev.vertex)
    for ex in scenario.exclusions:
        g.label(ex.condition)
        g.label(ex.target)

    result = dict(defaults)
    for ev in scenario.evidence:
        if ev.mode is EvidenceMode.SOURCE:
            result = _merge_max(
                result, _propagation_core(g, ev.vertex, ev.value, mode)
            )

    snapshot = dict(result)
    for ex in scenario.exclusions:
        if snapshot.get(ex.condition) == Likeliness.NECESSARY:
            current = result.get(ex.target)
            result[ex.target] = (
                ex.floor if current is None else min(current, ex.floor)
            )

    for ev in scenario.evidence:
        if ev.mode is EvidenceMode.CLAMP:
            result[ev.vertex] = ev.value
    return result


@dataclass(frozen=True)
class ScenarioTable:
    """Grades of selected vertices across a defaults column plus scenarios."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, tuple[Likeliness | None, ...]], ...] = field(
        default=()
    )


def compare_scenarios(
    g: ContextGraph,
    defaults: Valuation,
    scenarios: list[Scenario],
    vertices: list[VertexId],
    mode: PropagationMode = PropagationMode.FIXPOINT,
) -> ScenarioTable:
    """Tabulate scenario outcomes side by side.

    One column per scenario after the defaults column, one row per
    requested vertex.  Scenario names must be distinct.
    """
    names = [s.name for s in scenarios]
    if len(set(names)) != len(names):
        raise ScenarioError("scenario names must be distinct")
    columns = [dict(defaults)]
    columns += [apply_scenario(g, defaults, s, mode) for s in scenarios]
    rows = []
    for v in vertices:
        label = g.label(v)
        rows.append((label, tuple(col.get(v) for col in columns)))
    return ScenarioTable(
        columns=("default", *names),
        rows=tuple(rows),
    )
