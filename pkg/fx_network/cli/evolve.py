"""Windowed evolution: metric series, survival curves and trend fits."""

from typing import Annotated

import pandas as pd
import typer
from rich.console import Console
from rich.table import Table

from fx_network.cli._artifacts import ArtifactWriter, frame_to_csv
from fx_network.cli._config import (
    ALL_BASES,
    BaseOpt,
    BlocksOpt,
    CachedOpt,
    ClipOpt,
    FormatOpt,
    InputsArg,
    InvertOpt,
    MaxGapOpt,
    MaxMissingOpt,
    OutputOpt,
    QuoteOpt,
    RunConfig,
    StepOpt,
    WindowOpt,
    WorkersOpt,
    build_config,
    load_panel,
    parse_codes,
    reporting_errors,
    resolve_bases,
    window_spec,
)
from fx_network.data_models import SurvivalSeries
from fx_network.evolution.rolling import (
    TrendFit,
    linear_trend,
    node_trajectory,
    rolling_snapshots,
    survival_curves,
)
from fx_network.evolution.snapshot import Snapshot
from fx_network.graph.exporters import edges_csv, write_dot, write_graphml
from fx_network.metrics.report import reports_to_frame
from fx_network.utils import printer

SERIES_METRICS = ("path_length", "clustering", "internode_distance", "lambda_max")
# Trend fits need at least this many windows.
_MIN_TREND_POINTS = 3


def default_max_delta(n_windows: int, config: RunConfig) -> int:
    """Two window lengths of shift in sliding mode, capped by the window count."""
    spec = config.window
    if spec is not None and spec.mode == "sliding":
        span = max(1, 2 * spec.length_days // spec.step_days)
        return min(n_windows - 1, span)
    return n_windows - 1


def survival_frame(series: SurvivalSeries, *, percent: bool) -> pd.DataFrame:
    """`delta,sigma,Sigma` table, optionally in per cent."""
    scale = 100.0 if percent else 1.0
    return pd.DataFrame(
        {
            "delta": list(series.delta_values),
            "sigma": [v * scale for v in series.sigma],
            "Sigma": [v * scale for v in series.Sigma],
        }
    )


def metric_series(snapshots: list[Snapshot], metric: str) -> pd.DataFrame:
    """`window_end_date,value` table of one scalar metric."""
    return pd.DataFrame(
        {
            "window_end_date": [s.report.end_date.isoformat() for s in snapshots],
            "value": [getattr(s.report, metric) for s in snapshots],
        }
    )


def write_evolution(  # noqa: PLR0913
    writer: ArtifactWriter,
    base: str,
    snapshots: list[Snapshot],
    config: RunConfig,
    *,
    percent: bool,
    trees: bool,
    nodes: list[str],
    max_delta: int | None,
) -> dict[str, TrendFit]:
    """Stage every evolution artifact of one base and return the trend fits."""
    for metric in SERIES_METRICS:
        writer.write_text(base, f"{metric}.csv", frame_to_csv(metric_series(snapshots, metric)))
    reports = reports_to_frame([s.report for s in snapshots])
    writer.write_text(base, "metrics.csv", frame_to_csv(reports))

    if len(snapshots) >= 2:  # noqa: PLR2004
        delta = max_delta if max_delta is not None else default_max_delta(len(snapshots), config)
        series = survival_curves([s.tree for s in snapshots], delta)
        survival = survival_frame(series, percent=percent)
        writer.write_text(base, "survival.csv", frame_to_csv(survival))

    fits = {}
    if len(snapshots) >= _MIN_TREND_POINTS:
        overlap = config.window.overlap if config.window is not None else 1.0
        fits = {
            m: linear_trend([getattr(s.report, m) for s in snapshots], overlap=overlap)
            for m in SERIES_METRICS
        }
        # stderr already carries the sqrt(overlap) correction.
        trend = pd.DataFrame(
            [(m, f.slope, f.intercept, f.stderr, overlap) for m, f in fits.items()],
            columns=["metric", "slope", "intercept", "stderr", "overlap"],
        )
        writer.write_text(base, "trend.csv", frame_to_csv(trend))

    for node in nodes:
        rows = [(d.isoformat(), k, b) for d, k, b in node_trajectory(snapshots, node)]
        frame = pd.DataFrame(rows, columns=["window_end_date", "degree", "betweenness"])
        writer.write_text(base, f"node_{node}.csv", frame_to_csv(frame))

    if trees:
        for s in snapshots:
            stem = f"trees/window_{s.window.window_id:03d}"
            tree = s.tree
            if "csv" in config.formats:
                writer.write_text(base, f"{stem}.csv", edges_csv(tree))
            if "dot" in config.formats:
                writer.write_with(base, f"{stem}.dot", lambda path, t=tree: write_dot(t, path))
            if "graphml" in config.formats:
                writer.write_with(
                    base, f"{stem}.graphml", lambda path, t=tree: write_graphml(t, path)
                )
    return fits


def evolve(  # noqa: PLR0913
    inputs: InputsArg = None,
    cached: CachedOpt = None,
    output: OutputOpt = None,
    quote: QuoteOpt = None,
    base: BaseOpt = None,
    clip_sigma: ClipOpt = None,
    window: WindowOpt = None,
    step: StepOpt = None,
    blocks: BlocksOpt = None,
    percent: Annotated[
        bool, typer.Option("--percent", help="Write survival ratios in per cent.")
    ] = False,
    max_delta: Annotated[
        int | None,
        typer.Option(
            "--max-delta",
            help="Largest window shift in survival curves. Every shift averages over the "
            "same origins, so all survival values depend on this choice.",
        ),
    ] = None,
    trees: Annotated[
        bool, typer.Option("--trees", help="Export the spanning tree of every window.")
    ] = False,
    nodes: Annotated[
        str | None,
        typer.Option("--nodes", help="Comma-separated nodes to track across windows."),
    ] = None,
    export_format: FormatOpt = None,
    invert: InvertOpt = False,
    max_gap: MaxGapOpt = None,
    max_missing_frac: MaxMissingOpt = None,
    workers: WorkersOpt = None,
) -> None:
    """Analyze sliding windows or block subintervals and write metric time series."""
    with reporting_errors():
        config = build_config(
            "evolve",
            inputs=inputs,
            cached=cached,
            quote=quote,
            base=base,
            clip_sigma=clip_sigma,
            output=output,
            formats=export_format,
            invert=invert,
            max_gap=max_gap,
            max_missing_frac=max_missing_frac,
            workers=workers,
            window=window_spec(window, step, blocks),
            extra={"percent": percent, "max_delta": max_delta, "trees": trees, "nodes": nodes},
        )
        tracked = parse_codes(nodes)
        panel = load_panel(config)
        bases = resolve_bases(config, panel)
        results = {
            b: rolling_snapshots(
                panel, b, config.window, clip_sigma=config.clip_sigma, workers=config.workers
            )
            for b in bases
        }
        with ArtifactWriter(config) as writer:
            fits = {
                b: write_evolution(
                    writer,
                    b,
                    snaps,
                    config,
                    percent=percent,
                    trees=trees,
                    nodes=[n for n in tracked if n != b],
                    max_delta=max_delta,
                )
                for b, snaps in results.items()
            }
            if config.base == ALL_BASES:
                every = [s.report for snaps in results.values() for s in snaps]
                writer.write_text(ALL_BASES, "metrics.csv", frame_to_csv(reports_to_frame(every)))

    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Base", style="cyan")
    table.add_column("Windows", justify="right")
    for metric in SERIES_METRICS:
        table.add_column(f"{metric} slope", justify="right")
    for b, snaps in results.items():
        slopes = [
            f"{fits[b][m].slope:+.2e} ({fits[b][m].t_value:+.1f} se)" if fits[b] else "-"
            for m in SERIES_METRICS
        ]
        table.add_row(b, str(len(snaps)), *slopes)
    Console().print(table)
    printer.cprint("Evolution written to", str(config.output_dir), highlight_idx=1, color="green")
