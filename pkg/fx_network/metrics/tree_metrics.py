"""Topological metrics of minimal spanning trees."""

from fx_network.data_models import CurrencyCode, SpanningTree
from fx_network.errors import NotFoundError, SizeError
from fx_network.graph.tree_graph import TreeGraph

_MODULE = "net-metrics"


def node_degree(tree: SpanningTree, x: CurrencyCode) -> int:
    """Number of tree edges incident to x.

    Raises:
        NotFoundError: If x is not a tree node.

    """
    return TreeGraph.from_tree(tree).degree(x)


def _through_pairs(tree: TreeGraph) -> dict[CurrencyCode, int]:
    """Ordered pairs (Y, Z) whose tree path has each node as an interior point.

    Removing X splits the tree into components of sizes s_i summing to N - 1;
    pairs across different components all route through X, giving
    (N - 1)**2 - sum(s_i**2).
    """
    nodes = tree.nodes
    n = len(nodes)
    parent, size = tree.subtree_sizes(nodes[0])
    counts = {}
    for x in nodes:
        parts = [size[c] for c in tree.neighbours(x) if parent.get(c) == x]
        if parent[x] is not None:
            parts.append(n - size[x])
        counts[x] = (n - 1) ** 2 - sum(s * s for s in parts)
    return counts


def betweenness_all(tree: SpanningTree) -> dict[CurrencyCode, float]:
    """Betweenness of every node in one pass over subtree sizes.

    Raises:
        SizeError: Fewer than 3 nodes.

    """
    n = tree.n
    if n < 3:  # noqa: PLR2004
        raise SizeError(f"Betweenness needs at least 3 nodes, got {n}", module=_MODULE)
    denominator = (n - 1) * (n - 2)
    counts = _through_pairs(TreeGraph.from_tree(tree))
    return {x: counts[x] / denominator for x in sorted(tree.nodes)}


def betweenness(tree: SpanningTree, x: CurrencyCode) -> float:
    """Fraction of ordered node pairs, x excluded, whose tree path passes through x.

    Raises:
        SizeError: Fewer than 3 nodes.
        NotFoundError: If x is not a tree node.

    """
    if x not in tree.nodes:
        raise NotFoundError(f"Node '{x}' not found in tree", module=_MODULE, context=x)
    return betweenness_all(tree)[x]


def path_length(tree: SpanningTree) -> float:
    """Mean hop count over ordered node pairs of the unweighted tree.

    Each edge lies on s * (N - s) unordered shortest paths, s being the size
    of the subtree on one side.

    Raises:
        SizeError: Fewer than 2 nodes.

    """
    n = tree.n
    if n < 2:  # noqa: PLR2004
        raise SizeError(f"Path length needs at least 2 nodes, got {n}", module=_MODULE)
    graph = TreeGraph.from_tree(tree)
    parent, size = graph.subtree_sizes(graph.nodes[0])
    total = sum(size[v] * (n - size[v]) for v, up in parent.items() if up is not None)
    return 2.0 * total / (n * (n - 1))
