"""Full-period and windowed analyses."""

from fx_network.evolution.rolling import (
    TrendFit,
    linear_trend,
    make_windows,
    node_trajectory,
    proximity_rows,
    rolling_metrics,
    rolling_proximity,
    rolling_snapshots,
    survival_curves,
)
from fx_network.evolution.snapshot import Snapshot, analyze_window, full_window

__all__ = [
    "Snapshot",
    "TrendFit",
    "analyze_window",
    "full_window",
    "linear_trend",
    "make_windows",
    "node_trajectory",
    "proximity_rows",
    "rolling_metrics",
    "rolling_proximity",
    "rolling_snapshots",
    "survival_curves",
]
