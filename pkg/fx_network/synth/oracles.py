"""Brute-force references for the fast tree and network computations."""

import heapq
import itertools
from collections.abc import Sequence

import numpy as np

from fx_network.data_models import CurrencyCode, SpanningTree
from fx_network.errors import SizeError
from fx_network.graph.tree_graph import TreeGraph

_MODULE = "synth-oracle"
MST_ORACLE_MAX_NODES = 7
BETWEENNESS_ORACLE_MAX_NODES = 12


def prufer_to_edges(sequence: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence of length n - 2 into the edges of a labeled tree."""
    degree = [1] * n
    for v in sequence:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in sequence:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def mst_oracle(distances: np.ndarray) -> float:
    """Minimal total distance over all n**(n - 2) labeled spanning trees.

    Raises:
        SizeError: Fewer than 2 or more than 7 nodes.

    """
    D = np.asarray(distances, dtype=float)
    n = D.shape[0]
    if not 2 <= n <= MST_ORACLE_MAX_NODES:  # noqa: PLR2004
        raise SizeError(
            f"MST oracle handles 2 to {MST_ORACLE_MAX_NODES} nodes, got {n}", module=_MODULE
        )
    if n == 2:  # noqa: PLR2004
        return float(D[0, 1])
    return min(
        float(sum(D[i, j] for i, j in prufer_to_edges(seq, n)))
        for seq in itertools.product(range(n), repeat=n - 2)
    )


def betweenness_oracle(tree: SpanningTree, x: CurrencyCode) -> float:
    """Walk the path of every ordered pair and count those passing through x.

    Raises:
        SizeError: Fewer than 3 or more than 12 nodes.

    """
    n = tree.n
    if not 3 <= n <= BETWEENNESS_ORACLE_MAX_NODES:  # noqa: PLR2004
        raise SizeError(
            f"Betweenness oracle handles 3 to {BETWEENNESS_ORACLE_MAX_NODES} nodes, got {n}",
            module=_MODULE,
        )
    graph = TreeGraph.from_tree(tree)
    graph.degree(x)
    others = [v for v in graph.nodes if v != x]
    through = sum(
        1
        for y, z in itertools.permutations(others, 2)
        if x in graph.path(y, z)[1:-1]
    )
    return through / ((n - 1) * (n - 2))


def path_length_oracle(tree: SpanningTree) -> float:
    """Mean breadth-first hop count over all ordered pairs."""
    n = tree.n
    if n < 2:  # noqa: PLR2004
        raise SizeError(f"Path length needs at least 2 nodes, got {n}", module=_MODULE)
    graph = TreeGraph.from_tree(tree)
    total = sum(sum(graph.hop_counts(v).values()) for v in graph.nodes)
    return total / (n * (n - 1))


def clustering_oracle(
    nodes: Sequence[CurrencyCode],
    weights: np.ndarray,
) -> tuple[dict[CurrencyCode, float], float]:
    """Weighted clustering by explicit enumeration of ordered neighbour pairs."""
    W = np.asarray(weights, dtype=float)
    n = len(nodes)
    if n < 3:  # noqa: PLR2004
        raise SizeError(f"Clustering needs at least 3 nodes, got {n}", module=_MODULE)
    top = max(abs(W[i, j]) for i in range(n) for j in range(n) if i != j)
    per_node = {}
    for x in range(n):
        total = 0.0
        for y in range(n):
            for z in range(n):
                if len({x, y, z}) < 3:  # noqa: PLR2004
                    continue
                product = abs(W[x, y]) * abs(W[y, z]) * abs(W[z, x]) / top**3
                total += product ** (1.0 / 3.0)
        per_node[nodes[x]] = total / ((n - 1) * (n - 2))
    return per_node, sum(per_node.values()) / n
