"""Windowed evolution of networks, metrics and tree stability."""

import bisect
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from datetime import date
from typing import NamedTuple

import numpy as np
from scipy import stats

from fx_network.constants import DEFAULT_CLIP_SIGMA, MIN_WINDOW_LENGTH
from fx_network.data_models import (
    CurrencyCode,
    MetricsReport,
    RatePanel,
    SpanningTree,
    SurvivalSeries,
    Window,
    WindowSpec,
)
from fx_network.errors import SizeError, ValidationError
from fx_network.evolution.snapshot import Snapshot, analyze_window
from fx_network.graph.spanning_tree import edge_set, survival_multi, survival_single
from fx_network.metrics.network_metrics import proximity_count
from fx_network.settings import settings
from fx_network.utils import utils

_MODULE = "rolling-analysis"


class TrendFit(NamedTuple):
    """Least-squares line through a metric series indexed by window position."""

    slope: float
    intercept: float
    stderr: float

    @property
    def t_value(self) -> float:
        """Slope in units of its standard error."""
        if self.stderr > 0:
            return self.slope / self.stderr
        return 0.0 if self.slope == 0 else math.copysign(math.inf, self.slope)


def make_windows(dates: Sequence[date], spec: WindowSpec) -> list[Window]:
    """Cut a date axis into analysis windows.

    Sliding windows are [k * step, k * step + length) while they fit. Block
    windows cover the dates inside each inclusive boundary pair.

    Raises:
        SizeError: No window fits, or a block holds too few dates.

    """
    n = len(dates)
    if spec.mode == "sliding":
        if spec.length_days > n:
            raise SizeError(
                f"Window of {spec.length_days} days exceeds the {n} available dates",
                module=_MODULE,
            )
        count = (n - spec.length_days) // spec.step_days + 1
        return [
            Window(window_id=k, start=start, end=start + spec.length_days)
            for k, start in enumerate(range(0, count * spec.step_days, spec.step_days))
        ]

    windows = []
    for k, (first, last) in enumerate(spec.block_boundaries):
        start = bisect.bisect_left(dates, first)
        end = bisect.bisect_right(dates, last)
        if end - start < MIN_WINDOW_LENGTH:
            raise SizeError(
                f"Block {first}..{last} holds {end - start} dates, "
                f"at least {MIN_WINDOW_LENGTH} needed",
                module=_MODULE,
                context=f"window {k}",
            )
        windows.append(Window(window_id=k, start=start, end=end))
    return windows


def rolling_snapshots(
    panel: RatePanel,
    base: CurrencyCode,
    spec: WindowSpec,
    *,
    clip_sigma: float = DEFAULT_CLIP_SIGMA,
    workers: int | None = None,
) -> list[Snapshot]:
    """Analyze every window of the panel for one base, in window order.

    Windows run concurrently; results and the first error keep window order.
    """
    windows = make_windows(panel.dates, spec)
    utils.log(f"Base {base}: {len(windows)} windows ({spec.mode})")

    def _one(window: Window) -> Snapshot:
        snapshot = analyze_window(panel, base, window, clip_sigma=clip_sigma)
        utils.log(f"Base {base}: window {window.window_id} done")
        return snapshot

    with ThreadPoolExecutor(max_workers=workers or settings.workers) as pool:
        return list(pool.map(_one, windows))


def rolling_metrics(
    panel: RatePanel,
    base: CurrencyCode,
    spec: WindowSpec,
    *,
    clip_sigma: float = DEFAULT_CLIP_SIGMA,
    workers: int | None = None,
) -> list[MetricsReport]:
    """One metrics report per window, chronological."""
    snapshots = rolling_snapshots(panel, base, spec, clip_sigma=clip_sigma, workers=workers)
    return [s.report for s in snapshots]


def survival_curves(trees: Sequence[SpanningTree], max_delta: int) -> SurvivalSeries:
    """Average single- and multi-step edge survival for window shifts 1..max_delta.

    Every shift averages over the same origins i = 0 .. len(trees) - 1 - max_delta,
    so the multi-step ratio never exceeds the single-step one and never grows
    with the shift.

    Raises:
        SizeError: Fewer than 2 trees or max_delta not below the tree count.
        ValidationError: Trees over different node sets.

    """
    if len(trees) < 2:  # noqa: PLR2004
        raise SizeError("Survival curves need at least 2 trees", module=_MODULE)
    if not 1 <= max_delta < len(trees):
        raise SizeError(
            f"max_delta must lie in [1, {len(trees) - 1}], got {max_delta}", module=_MODULE
        )
    nodes = set(trees[0].nodes)
    if any(set(t.nodes) != nodes for t in trees):
        raise ValidationError("Trees span different node sets", module=_MODULE)

    n = len(nodes)
    edges = [edge_set(t) for t in trees]
    origins = range(len(trees) - max_delta)
    deltas = tuple(range(1, max_delta + 1))
    sigma = tuple(
        float(np.mean([survival_single(edges[i], edges[i + d], n) for i in origins]))
        for d in deltas
    )
    multi = tuple(
        float(np.mean([survival_multi(edges[i : i + d + 1], n) for i in origins]))
        for d in deltas
    )
    return SurvivalSeries(base=trees[0].base, delta_values=deltas, sigma=sigma, Sigma=multi)


def proximity_rows(
    snapshots: Sequence[Snapshot],
    a: CurrencyCode,
    b: CurrencyCode,
) -> list[tuple[date, int, int]]:
    """Per-window (end date, nodes closer to a, nodes closer to b)."""
    rows = []
    for s in snapshots:
        count_a, count_b = proximity_count(s.network, a, b)
        rows.append((s.report.end_date, count_a, count_b))
    return rows


def rolling_proximity(  # noqa: PLR0913
    panel: RatePanel,
    base: CurrencyCode,
    a: CurrencyCode,
    b: CurrencyCode,
    spec: WindowSpec,
    *,
    clip_sigma: float = DEFAULT_CLIP_SIGMA,
    workers: int | None = None,
) -> list[tuple[date, int, int]]:
    """Proximity counts of two reference currencies in every window."""
    snapshots = rolling_snapshots(panel, base, spec, clip_sigma=clip_sigma, workers=workers)
    return proximity_rows(snapshots, a, b)


def linear_trend(values: Sequence[float], *, overlap: float = 1.0) -> TrendFit:
    """Fit value = intercept + slope * position by least squares.

    Metrics of overlapping windows are serially correlated, so the OLS standard
    error is inflated by sqrt(overlap): the effective sample size is
    n / overlap, with overlap = window length / step.

    Raises:
        SizeError: Fewer than 3 values.

    """
    y = np.asarray(values, dtype=float)
    if y.size < 3:  # noqa: PLR2004
        raise SizeError("Trend fit needs at least 3 points", module=_MODULE)
    fit = stats.linregress(np.arange(y.size, dtype=float), y)
    return TrendFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        stderr=float(fit.stderr) * math.sqrt(max(1.0, overlap)),
    )


def node_trajectory(
    snapshots: Sequence[Snapshot],
    node: CurrencyCode,
) -> list[tuple[date, int, float]]:
    """Degree and betweenness of one node in every window.

    Raises:
        NotFoundError: The node is absent from the networks.

    """
    rows = []
    for s in snapshots:
        s.network.index_of(node)
        metrics = s.report.per_node[node]
        rows.append((s.report.end_date, metrics.degree, metrics.betweenness))
    return rows
