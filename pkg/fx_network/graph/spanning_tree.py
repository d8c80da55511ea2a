"""Minimal spanning tree construction and edge-set comparison."""

from collections.abc import Iterable, Sequence

import numpy as np

from fx_network.data_models import (
    CorrelationNetwork,
    CurrencyCode,
    EdgePair,
    SpanningTree,
    TreeEdge,
)
from fx_network.errors import SizeError, ValidationError

_MODULE = "spanning-tree"


class _UnionFind:
    """Disjoint sets with path halving and union by size."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def kruskal_edges(nodes: Sequence[CurrencyCode], distances: np.ndarray) -> list[tuple[int, int]]:
    """Greedy minimal spanning tree over a full distance matrix.

    Candidate edges are taken in ascending (distance, smaller code, larger code)
    order, so ties resolve the same way on every run.

    Returns:
        Index pairs (i, j) of the accepted edges in insertion order.

    Raises:
        ValidationError: Non-finite distance or asymmetric matrix.

    """
    D = np.asarray(distances, dtype=float)
    n = len(nodes)
    if D.shape != (n, n):
        raise ValidationError(f"Distance matrix shape {D.shape} for {n} nodes", module=_MODULE)
    iu, ju = np.triu_indices(n, k=1)
    upper = D[iu, ju]
    if not np.all(np.isfinite(upper)):
        raise ValidationError("Distance matrix has non-finite entries", module=_MODULE)
    if not np.allclose(upper, D[ju, iu], rtol=0, atol=1e-12):
        raise ValidationError("Distance matrix is not symmetric", module=_MODULE)

    candidates = sorted(
        (float(d), *sorted((nodes[i], nodes[j])), int(i), int(j))
        for d, i, j in zip(upper, iu, ju)
    )
    sets = _UnionFind(n)
    accepted: list[tuple[int, int]] = []
    for _, _, _, i, j in candidates:
        if sets.union(i, j):
            accepted.append((i, j))
            if len(accepted) == n - 1:
                break
    assert len(accepted) == n - 1
    return accepted


def build_mst(net: CorrelationNetwork) -> SpanningTree:
    """Minimal spanning tree of a correlation network over its distances.

    Edge weights are copied from |R|; an edge is anticorrelated when its
    underlying R is negative (d > sqrt 2).

    Raises:
        SizeError: Fewer than two nodes.
        ValidationError: Non-finite distances.

    """
    if net.n < 2:  # noqa: PLR2004
        raise SizeError(f"Spanning tree needs at least 2 nodes, got {net.n}", module=_MODULE)
    edges = []
    for i, j in kruskal_edges(net.nodes, net.distances):
        a, b = sorted((net.nodes[i], net.nodes[j]))
        edges.append(
            TreeEdge(
                source=a,
                target=b,
                distance=float(net.distances[i, j]),
                weight=float(net.weights[i, j]),
                anticorrelated=bool(net.R[i, j] < 0),
            )
        )
    return SpanningTree(
        base=net.base,
        nodes=net.nodes,
        edges=tuple(sorted(edges, key=lambda e: e.pair)),
    )


def edge_set(tree: SpanningTree) -> frozenset[EdgePair]:
    """Canonical set of unordered edges, each pair sorted lexicographically."""
    return frozenset(tuple(sorted(e.pair)) for e in tree.edges)  # type: ignore


def _canonical(edges: Iterable[EdgePair]) -> frozenset[EdgePair]:
    return frozenset(tuple(sorted(e)) for e in edges)  # type: ignore


def _check_tree_edges(edges: frozenset[EdgePair], n: int) -> frozenset[CurrencyCode]:
    if n < 2:  # noqa: PLR2004
        raise SizeError(f"Survival ratios need at least 2 nodes, got {n}", module=_MODULE)
    nodes = frozenset(node for pair in edges for node in pair)
    if len(edges) != n - 1 or len(nodes) != n:
        raise ValidationError(
            f"Edge set with {len(edges)} edges over {len(nodes)} nodes "
            f"is not a spanning tree on {n} nodes",
            module=_MODULE,
        )
    return nodes


def survival_single(e1: Iterable[EdgePair], e2: Iterable[EdgePair], n: int) -> float:
    """Fraction of the N - 1 edges shared by two trees.

    Raises:
        ValidationError: The trees span different node sets.

    """
    a, b = _canonical(e1), _canonical(e2)
    if _check_tree_edges(a, n) != _check_tree_edges(b, n):
        raise ValidationError("Edge sets span different node sets", module=_MODULE)
    return len(a & b) / (n - 1)


def survival_multi(sets: Sequence[Iterable[EdgePair]], n: int) -> float:
    """Fraction of the N - 1 edges present in every tree of a sequence.

    Raises:
        ValidationError: Empty sequence or trees over different node sets.

    """
    if not sets:
        raise ValidationError("Multi-step survival needs at least one edge set", module=_MODULE)
    canonical = [_canonical(s) for s in sets]
    universe = _check_tree_edges(canonical[0], n)
    common = canonical[0]
    for s in canonical[1:]:
        if _check_tree_edges(s, n) != universe:
            raise ValidationError("Edge sets span different node sets", module=_MODULE)
        common = common & s
    return len(common) / (n - 1)
