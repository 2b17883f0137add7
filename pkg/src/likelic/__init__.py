"""likelic: a seven-grade likeliness calculus on proposition graphs.

Propositions live on the vertices of a directed graph; implications between
them carry grades from 0 (impossible) to 6 (necessary).  Grades of chains
compose by min, alternatives join by max, which makes derived implication a
widest-path problem and keeps the whole calculus deliberately low
resolution: no amount of weak evidence adds up to strong evidence.
"""

from .activation import (
    Activity,
    ActivityMap,
    adjoin_vertex,
    learn_edges_on_coactivation,
    run_activation_script,
    spread,
)
from .dsl import (
    Document,
    export_dot,
    parse_context,
    parse_document,
    parse_scenarios,
    serialize_context,
)
from .errors import GraphError, LikelicError, ParseError, ScenarioError
from .graph import (
    ContextGraph,
    Edge,
    EdgeKind,
    ImplicationOverwriteWarning,
    Valuation,
    VertexId,
)
from .inference import (
    PathWitness,
    all_pairs_derived,
    brute_force_derived,
    derived_implication,
    explain,
    path_likeliness,
)
from .scale import (
    BoundarySet,
    Likeliness,
    aggregation_capacity,
    boundaries,
    combine_and,
    combine_or,
    dual,
    likeliness_from_probability,
    total_likeliness,
)
from .update import (
    Evidence,
    EvidenceMode,
    Exclusion,
    PropagationMode,
    Scenario,
    ScenarioTable,
    apply_scenario,
    compare_scenarios,
    propagate,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # scale
    "Likeliness", "BoundarySet", "dual", "combine_or", "combine_and",
    "total_likeliness", "boundaries", "likeliness_from_probability",
    "aggregation_capacity",
    # graph
    "VertexId", "EdgeKind", "Edge", "ContextGraph", "Valuation",
    "ImplicationOverwriteWarning",
    # dsl
    "Document", "parse_context", "parse_scenarios", "parse_document",
    "serialize_context", "export_dot",
    # inference
    "PathWitness", "path_likeliness", "derived_implication",
    "all_pairs_derived", "brute_force_derived", "explain",
    # update
    "EvidenceMode", "Evidence", "Exclusion", "Scenario", "PropagationMode",
    "ScenarioTable", "propagate", "apply_scenario", "compare_scenarios",
    # activation
    "Activity", "ActivityMap", "spread", "adjoin_vertex",
    "learn_edges_on_coactivation", "run_activation_script",
    # errors
    "LikelicError", "GraphError", "ParseError", "ScenarioError",
]
