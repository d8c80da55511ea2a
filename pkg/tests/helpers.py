"""Small builders shared by the test modules."""

import numpy as np

from fx_network.data_models import CorrelationNetwork, SpanningTree, TreeEdge
from fx_network.graph.correlation import distance_matrix


def node_names(n: int) -> list[str]:
    """n distinct currency-like codes in lexicographic order."""
    return [f"C{chr(ord('A') + i // 26)}{chr(ord('A') + i % 26)}" for i in range(n)]


def network_from_R(R: np.ndarray, nodes: list[str] | None = None) -> CorrelationNetwork:
    """Correlation network around a given matrix."""
    R = np.asarray(R, dtype=float)
    return CorrelationNetwork(
        base="BBB",
        nodes=tuple(nodes or node_names(R.shape[0])),
        R=R,
        weights=np.abs(R),
        distances=distance_matrix(R),
    )


def tree_from_pairs(pairs: list[tuple[str, str]]) -> SpanningTree:
    """Spanning tree with unit distances over the given edges."""
    nodes = sorted({n for p in pairs for n in p})
    edges = tuple(
        TreeEdge(*sorted(p), distance=1.0, weight=0.5, anticorrelated=False) for p in pairs
    )
    return SpanningTree(base="BBB", nodes=tuple(nodes), edges=edges)


def star_tree(n: int) -> SpanningTree:
    """Star with the first node at the center."""
    names = node_names(n)
    return tree_from_pairs([(names[0], x) for x in names[1:]])


def random_tree(n: int, rng: np.random.Generator) -> SpanningTree:
    """Random labeled tree: node k attaches to a uniformly chosen earlier node."""
    names = node_names(n)
    return tree_from_pairs([(names[int(rng.integers(0, k))], names[k]) for k in range(1, n)])


def random_correlation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Sample correlation matrix of n random series."""
    return np.corrcoef(rng.standard_normal((n, 3 * n)))


def random_distances(n: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric matrix of random distances in (0, 2) with a zero diagonal."""
    upper = np.triu(rng.uniform(0.01, 2.0, (n, n)), k=1)
    return upper + upper.T
