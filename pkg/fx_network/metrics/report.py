"""Metric bundles per base and window, and their JSON/CSV forms."""

import json
from dataclasses import asdict
from datetime import date

import pandas as pd

from fx_network.data_models import (
    CorrelationNetwork,
    CurrencyCode,
    MetricsReport,
    NodeMetrics,
    SpanningTree,
)
from fx_network.errors import ValidationError
from fx_network.graph.correlation import largest_eigenvalue
from fx_network.graph.tree_graph import TreeGraph
from fx_network.metrics.network_metrics import internode_distance, weighted_clustering
from fx_network.metrics.tree_metrics import betweenness_all, path_length

REPORT_COLUMNS = [
    "base",
    "window_id",
    "start_date",
    "end_date",
    "n_nodes",
    "path_length",
    "clustering",
    "internode_distance",
    "lambda_max",
    "clipped",
]


def build_report(
    net: CorrelationNetwork,
    tree: SpanningTree,
    *,
    window_id: int,
    start_date: date,
    end_date: date,
    clipped: int = 0,
) -> MetricsReport:
    """Compute every metric of one network and its spanning tree.

    Raises:
        SizeError: Fewer than 3 nodes.

    """
    graph = TreeGraph.from_tree(tree)
    between = betweenness_all(tree)
    _, clustering = weighted_clustering(net)
    return MetricsReport(
        base=net.base,
        window_id=window_id,
        start_date=start_date,
        end_date=end_date,
        n_nodes=net.n,
        per_node={
            x: NodeMetrics(degree=graph.degree(x), betweenness=between[x])
            for x in sorted(net.nodes)
        },
        path_length=path_length(tree),
        clustering=clustering,
        internode_distance=internode_distance(net),
        lambda_max=largest_eigenvalue(net),
        clipped=clipped,
    )


def report_to_dict(report: MetricsReport) -> dict:
    """Plain dict with ISO dates and per-node metrics keyed by node."""
    data = asdict(report)
    data["start_date"] = report.start_date.isoformat()
    data["end_date"] = report.end_date.isoformat()
    data["per_node"] = {
        x: {"degree": m.degree, "betweenness": m.betweenness}
        for x, m in sorted(report.per_node.items())
    }
    return data


def report_to_json(report: MetricsReport | list[MetricsReport]) -> str:
    """JSON text; floats are written with their shortest round-trip repr."""
    if isinstance(report, list):
        payload = [report_to_dict(r) for r in report]
    else:
        payload = report_to_dict(report)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def reports_to_frame(reports: list[MetricsReport]) -> pd.DataFrame:
    """One flat row per report, sorted by (base, window_id)."""
    rows = [
        {
            "base": r.base,
            "window_id": r.window_id,
            "start_date": r.start_date.isoformat(),
            "end_date": r.end_date.isoformat(),
            "n_nodes": r.n_nodes,
            "path_length": r.path_length,
            "clustering": r.clustering,
            "internode_distance": r.internode_distance,
            "lambda_max": r.lambda_max,
            "clipped": r.clipped,
        }
        for r in reports
    ]
    frame = pd.DataFrame(rows, columns=REPORT_COLUMNS)
    return frame.sort_values(["base", "window_id"], kind="stable").reset_index(drop=True)


def nodes_frame(report: MetricsReport) -> pd.DataFrame:
    """Per-node degree and betweenness, nodes in lexicographic order."""
    return pd.DataFrame(
        [(x, m.degree, m.betweenness) for x, m in sorted(report.per_node.items())],
        columns=["node", "degree", "betweenness"],
    )


def hub_nodes(
    report: MetricsReport,
    top: int = 3,
    *,
    by: str = "degree",
) -> list[tuple[CurrencyCode, NodeMetrics]]:
    """Leading nodes by degree or betweenness, ties broken by code."""
    if by not in NodeMetrics._fields:
        raise ValidationError(f"Unknown node metric {by!r}", module="net-metrics")
    ranked = sorted(report.per_node.items(), key=lambda item: (-getattr(item[1], by), item[0]))
    return ranked[:top]
