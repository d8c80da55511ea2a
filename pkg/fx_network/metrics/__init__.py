"""Tree and network metrics."""

from fx_network.metrics.network_metrics import (
    average_log_rate,
    internode_distance,
    proximity_count,
    weighted_clustering,
    weighted_clustering_from_weights,
)
from fx_network.metrics.report import (
    build_report,
    hub_nodes,
    nodes_frame,
    report_to_json,
    reports_to_frame,
)
from fx_network.metrics.tree_metrics import betweenness, betweenness_all, node_degree, path_length

__all__ = [
    "average_log_rate",
    "betweenness",
    "betweenness_all",
    "build_report",
    "hub_nodes",
    "internode_distance",
    "node_degree",
    "nodes_frame",
    "path_length",
    "proximity_count",
    "report_to_json",
    "reports_to_frame",
    "weighted_clustering",
    "weighted_clustering_from_weights",
]
