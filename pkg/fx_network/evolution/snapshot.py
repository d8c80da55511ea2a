"""One base currency over one window: network, tree and metrics."""

from typing import NamedTuple

from fx_network.constants import DEFAULT_CLIP_SIGMA
from fx_network.data.panel import cross_rates, panel_slice
from fx_network.data_models import (
    CorrelationNetwork,
    CurrencyCode,
    MetricsReport,
    RatePanel,
    SpanningTree,
    Window,
)
from fx_network.errors import FxNetworkError
from fx_network.graph.correlation import correlation_matrix
from fx_network.graph.spanning_tree import build_mst
from fx_network.metrics.report import build_report
from fx_network.returns import build_return_matrix


class Snapshot(NamedTuple):
    """Everything computed for one (base, window) pair."""

    window: Window
    network: CorrelationNetwork
    tree: SpanningTree
    report: MetricsReport


def full_window(panel: RatePanel) -> Window:
    """The whole sample as window 0."""
    return Window(window_id=0, start=0, end=panel.n_dates)


def analyze_window(
    panel: RatePanel,
    base: CurrencyCode,
    window: Window | None = None,
    *,
    clip_sigma: float = DEFAULT_CLIP_SIGMA,
) -> Snapshot:
    """Run returns, correlation, tree and metrics on one window of the panel.

    Returns are normalized and clipped inside the window.

    Raises:
        FxNetworkError: From any stage, annotated with the window id.

    """
    window = window or full_window(panel)
    try:
        sliced = panel_slice(panel, window.start, window.end)
        returns = build_return_matrix(cross_rates(sliced, base), clip_sigma)
        network = correlation_matrix(returns)
        tree = build_mst(network)
        report = build_report(
            network,
            tree,
            window_id=window.window_id,
            start_date=sliced.dates[0],
            end_date=sliced.dates[-1],
            clipped=returns.clipped,
        )
    except FxNetworkError as e:
        raise e.with_context(f"base {base}, window {window.window_id}") from None
    return Snapshot(window=window, network=network, tree=tree, report=report)
