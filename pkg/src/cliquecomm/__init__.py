"""Clique-seeded overlapping community detection and evaluation toolkit."""

from .baselines import CpmParams, LpParams, clique_percolation, label_propagation
from .caa import CaaParams, CaaRunSummary, grow_community, run_caa
from .cliques import CliqueSet, enumerate_maximal_cliques, filter_overlapping
from .errors import (
    CliquecommError,
    DeadlineExceededError,
    EdgeListParseError,
    ResourceLimitError,
)
from .graph import (
    DirectedEdgeList,
    Graph,
    build_graph,
    induced_subgraph,
    load_cover,
    load_edge_list,
    mutualize,
    planted_block,
    planted_partition,
    save_cover,
    save_edge_list,
    sort_cover,
)
from .hashtags import (
    community_theme,
    load_hashtags,
    sample_communities,
    user_top_k,
)
from .metrics import (
    DEFAULT_BANDS,
    MetricsReport,
    desirable_coverage,
    evaluate,
    extended_modularity,
    size_histogram,
    triangle_participation_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "CaaParams",
    "CaaRunSummary",
    "CliqueSet",
    "CliquecommError",
    "CpmParams",
    "DEFAULT_BANDS",
    "DeadlineExceededError",
    "DirectedEdgeList",
    "EdgeListParseError",
    "Graph",
    "LpParams",
    "MetricsReport",
    "ResourceLimitError",
    "build_graph",
    "clique_percolation",
    "community_theme",
    "desirable_coverage",
    "enumerate_maximal_cliques",
    "evaluate",
    "extended_modularity",
    "filter_overlapping",
    "grow_community",
    "induced_subgraph",
    "label_propagation",
    "load_cover",
    "load_edge_list",
    "load_hashtags",
    "mutualize",
    "planted_block",
    "planted_partition",
    "run_caa",
    "sample_communities",
    "save_cover",
    "save_edge_list",
    "size_histogram",
    "sort_cover",
    "triangle_participation_ratio",
    "user_top_k",
]
