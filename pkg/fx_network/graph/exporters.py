"""DOT, GraphML and CSV exports of spanning trees."""

from pathlib import Path

import networkx as nx
import pandas as pd
from networkx.drawing.nx_pydot import write_dot as _nx_write_dot

from fx_network.constants import FLOAT_FORMAT
from fx_network.data_models import SpanningTree

# Line width of an edge with |R| = 1.
PENWIDTH_SCALE = 5.0
EDGE_COLUMNS = ["nodeA", "nodeB", "distance", "weight", "anticorrelated"]


def to_networkx(tree: SpanningTree) -> nx.Graph:
    """Undirected networkx graph with distance, weight and anticorrelation attributes.

    Nodes and edges are inserted in lexicographic order, so writers emit
    identical files for identical trees.
    """
    g = nx.Graph(base=tree.base)
    for node in sorted(tree.nodes):
        g.add_node(node)
    for edge in sorted(tree.edges, key=lambda e: e.pair):
        g.add_edge(
            edge.source,
            edge.target,
            distance=edge.distance,
            weight=edge.weight,
            anticorrelated=edge.anticorrelated,
        )
    return g


def write_graphml(tree: SpanningTree, path: Path) -> Path:
    """Write the tree as GraphML."""
    nx.write_graphml(to_networkx(tree), str(path))
    return path


def write_dot(tree: SpanningTree, path: Path) -> Path:
    """Write the tree as DOT; edge width follows the weight, green marks anticorrelation."""
    g = nx.Graph(name=f"mst_{tree.base}")
    for node in sorted(tree.nodes):
        g.add_node(node)
    for edge in sorted(tree.edges, key=lambda e: e.pair):
        g.add_edge(
            edge.source,
            edge.target,
            weight=FLOAT_FORMAT % edge.weight,
            distance=FLOAT_FORMAT % edge.distance,
            penwidth=f"{PENWIDTH_SCALE * edge.weight:.4f}",
            color="green" if edge.anticorrelated else "black",
        )
    _nx_write_dot(g, str(path))
    return path


def edges_frame(tree: SpanningTree) -> pd.DataFrame:
    """Edge table, one row per edge in canonical order."""
    rows = [
        (e.source, e.target, e.distance, e.weight, e.anticorrelated)
        for e in sorted(tree.edges, key=lambda e: e.pair)
    ]
    return pd.DataFrame(rows, columns=EDGE_COLUMNS)


def edges_csv(tree: SpanningTree) -> str:
    """Edge list as `nodeA,nodeB,distance,weight,anticorrelated` CSV text."""
    frame = edges_frame(tree)
    frame["anticorrelated"] = frame["anticorrelated"].map({True: "true", False: "false"})
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
