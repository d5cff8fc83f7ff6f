"""Lines in graph metric spaces and geometric dominance."""

from .audit import AuditReport, audit, replay
from .canonical import CanonicalForm, canonical_form, canonical_graph
from .constructions import (
    ExplodedGraph,
    LeftCliqueConfig,
    SamplerOutcome,
    explode,
    explode_line_count,
    explode_line_structure_check,
    known_example,
    sample_gnp,
    sample_left_clique,
    wheel,
    wheel_blown,
)
from .dominance import (
    Classification,
    GeneratorGraph,
    check_chen_chvatal,
    classify,
    generator_graph,
    is_geometric_dominant,
    is_strongly_geometric_dominant,
    is_super_geometric_dominant,
    trivial_kind,
)
from .enumeration import SearchResult, enumerate_connected, find_nontrivial_gd, g_min, sweep_open_questions
from .graph import (
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    Graph6Error,
    GraphError,
    TwinPartition,
    complement_edge_count,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diameter,
    distance_matrix,
    parse_edge_list,
    parse_graph6,
    path_graph,
    read_graph_file,
    to_graph6,
    twin_partition,
)
from .lines import (
    Line,
    LineFamily,
    MetricError,
    closure_line,
    has_universal_line,
    is_collinear,
    line,
    line_family,
    validate_metric,
)

__all__ = [name for name in dir() if not name.startswith("_")]
