"""crossmax: exact crossing-maximization toolkit for small graphs."""

from .graphs import (
    Graph,
    GraphError,
    GraphParseError,
    NotATreeError,
    SizeBoundExceeded,
    TwinPartition,
    CutResult,
    parse_graph,
    write_graph,
    cycle_graph,
    path_graph,
    complete_graph,
    star_graph,
    complete_bipartite,
    complete_tripartite,
    disjoint_union,
    independent_pair_weight,
    twin_classes,
    is_tree,
    is_caterpillar,
    proper_coloring,
    bipartition,
    maxcut_exact,
)

__all__ = [
    "Graph",
    "GraphError",
    "GraphParseError",
    "NotATreeError",
    "SizeBoundExceeded",
    "TwinPartition",
    "CutResult",
    "parse_graph",
    "write_graph",
    "cycle_graph",
    "path_graph",
    "complete_graph",
    "star_graph",
    "complete_bipartite",
    "complete_tripartite",
    "disjoint_union",
    "independent_pair_weight",
    "twin_classes",
    "is_tree",
    "is_caterpillar",
    "proper_coloring",
    "bipartition",
    "maxcut_exact",
]
