"""Correlation networks and their minimal spanning trees."""

from fx_network.graph.correlation import (
    correlation_from_distance,
    correlation_matrix,
    distance,
    distance_matrix,
    export_matrix,
    largest_eigenvalue,
)
from fx_network.graph.spanning_tree import build_mst, edge_set, survival_multi, survival_single
from fx_network.graph.tree_graph import TreeGraph

__all__ = [
    "TreeGraph",
    "build_mst",
    "correlation_from_distance",
    "correlation_matrix",
    "distance",
    "distance_matrix",
    "edge_set",
    "export_matrix",
    "largest_eigenvalue",
    "survival_multi",
    "survival_single",
]
