"""Metrics of complete weighted correlation networks."""

from collections.abc import Sequence

import numpy as np

from fx_network.data.panel import cross_rates
from fx_network.data_models import CorrelationNetwork, CurrencyCode, RatePanel
from fx_network.errors import DegenerateSeriesError, SizeError, ValidationError

_MODULE = "net-metrics"


def weighted_clustering_from_weights(
    nodes: Sequence[CurrencyCode],
    weights: np.ndarray,
) -> tuple[dict[CurrencyCode, float], float]:
    """Per-node and average weighted clustering of a complete network.

    Weights are divided by their off-diagonal maximum. For node X,
    c(X) = sum over ordered neighbour pairs (Y, Z) of the geometric mean
    (w_XY w_YZ w_ZX)**(1/3), divided by (N - 1)(N - 2).

    Args:
        nodes: Node labels in matrix order.
        weights: Symmetric non-negative N x N weight matrix; the diagonal is ignored.

    Returns:
        Tuple of (node -> c(X), mean over nodes).

    Raises:
        SizeError: Fewer than 3 nodes.
        DegenerateSeriesError: Every off-diagonal weight is zero.

    """
    W = np.array(weights, dtype=float)
    n = len(nodes)
    if n < 3:  # noqa: PLR2004
        raise SizeError(f"Clustering needs at least 3 nodes, got {n}", module=_MODULE)
    if W.shape != (n, n):
        raise ValidationError(f"Weight matrix shape {W.shape} for {n} nodes", module=_MODULE)
    np.fill_diagonal(W, 0.0)
    top = float(np.abs(W).max())
    if top == 0:
        raise DegenerateSeriesError("All network weights are zero", module=_MODULE)
    cube_root = np.cbrt(np.abs(W) / top)
    # diag(C^3) sums C_XY C_YZ C_ZX over Y, Z; the zero diagonal drops Y = Z and X terms.
    triangles = np.einsum("ij,jk,ki->i", cube_root, cube_root, cube_root)
    per_node = triangles / ((n - 1) * (n - 2))
    return {x: float(c) for x, c in zip(nodes, per_node)}, float(per_node.mean())


def weighted_clustering(net: CorrelationNetwork) -> tuple[dict[CurrencyCode, float], float]:
    """Weighted clustering of the complete network with weights |R|."""
    return weighted_clustering_from_weights(net.nodes, net.weights)


def internode_distance(net: CorrelationNetwork) -> float:
    """Mean metric distance over ordered node pairs.

    Raises:
        SizeError: Fewer than 2 nodes.

    """
    n = net.n
    if n < 2:  # noqa: PLR2004
        raise SizeError(f"Internode distance needs at least 2 nodes, got {n}", module=_MODULE)
    off_diagonal = ~np.eye(n, dtype=bool)
    return float(net.distances[off_diagonal].mean())


def proximity_count(
    net: CorrelationNetwork,
    a: CurrencyCode,
    b: CurrencyCode,
) -> tuple[int, int]:
    """Count the other nodes strictly closer to a than to b, and vice versa.

    Exact ties count for neither side.

    Raises:
        ValidationError: a equals b.
        NotFoundError: a or b is not a node.

    """
    if a == b:
        raise ValidationError(f"Proximity needs two distinct nodes, got {a} twice", module=_MODULE)
    ia, ib = net.index_of(a), net.index_of(b)
    others = [k for k in range(net.n) if k not in (ia, ib)]
    to_a = net.distances[others, ia]
    to_b = net.distances[others, ib]
    return int((to_a < to_b).sum()), int((to_b < to_a).sum())


def average_log_rate(panel: RatePanel, base: CurrencyCode) -> np.ndarray:
    """Daily mean of ln(B/X) over every price currency X.

    Raises:
        NotFoundError: base is not in the panel.

    """
    series = cross_rates(panel, base)
    return np.log(np.vstack([s.values for s in series])).mean(axis=0)
