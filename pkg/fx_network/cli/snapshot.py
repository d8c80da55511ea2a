"""Full-period analysis of one or every base currency."""

from concurrent.futures import ThreadPoolExecutor

import pandas as pd
from rich.console import Console
from rich.table import Table

from fx_network.cli._artifacts import ArtifactWriter, frame_to_csv
from fx_network.cli._config import (
    ALL_BASES,
    BaseOpt,
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
    WorkersOpt,
    build_config,
    load_panel,
    reporting_errors,
    resolve_bases,
)
from fx_network.data_models import RatePanel
from fx_network.evolution.snapshot import Snapshot, analyze_window
from fx_network.graph.correlation import export_matrix
from fx_network.graph.exporters import edges_csv, write_dot, write_graphml
from fx_network.metrics.network_metrics import average_log_rate
from fx_network.metrics.report import hub_nodes, nodes_frame, report_to_json, reports_to_frame
from fx_network.utils import printer


def write_snapshot(
    writer: ArtifactWriter,
    snapshot: Snapshot,
    panel: RatePanel,
    formats: tuple[str, ...],
) -> None:
    """Stage the matrices, tree, metrics and average log rate of one base."""
    net, tree, report = snapshot.network, snapshot.tree, snapshot.report
    base = net.base
    if "csv" in formats:
        rate = pd.DataFrame(
            {
                "date": [d.isoformat() for d in panel.dates],
                "value": average_log_rate(panel, base),
            }
        )
        writer.write_text(base, "average_log_rate.csv", frame_to_csv(rate))
        writer.write_text(base, "correlation.csv", export_matrix(net.nodes, net.R))
        writer.write_text(base, "distance.csv", export_matrix(net.nodes, net.distances))
        writer.write_text(base, "mst_edges.csv", edges_csv(tree))
        writer.write_text(base, "metrics.csv", frame_to_csv(reports_to_frame([report])))
        writer.write_text(base, "nodes.csv", frame_to_csv(nodes_frame(report)))
    if "dot" in formats:
        writer.write_with(base, "mst.dot", lambda path: write_dot(tree, path))
    if "graphml" in formats:
        writer.write_with(base, "mst.graphml", lambda path: write_graphml(tree, path))
    if "json" in formats:
        writer.write_text(base, "metrics.json", report_to_json(report))


def _print_summary(snapshots: list[Snapshot]) -> None:
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Base", style="cyan")
    table.add_column("Nodes", justify="right")
    table.add_column("L", justify="right")
    table.add_column("C", justify="right")
    table.add_column("Mean d", justify="right")
    table.add_column("lambda_max", justify="right")
    table.add_column("Hub", style="yellow")
    for s in snapshots:
        r = s.report
        [(hub, metrics)] = hub_nodes(r, 1)
        table.add_row(
            r.base,
            str(r.n_nodes),
            f"{r.path_length:.3f}",
            f"{r.clustering:.3f}",
            f"{r.internode_distance:.3f}",
            f"{r.lambda_max:.3f}",
            f"{hub} (K={metrics.degree})",
        )
    Console().print(table)


def run_snapshot(config: RunConfig) -> list[Snapshot]:
    """Analyze the full sample for every requested base and publish artifacts."""
    panel = load_panel(config)
    bases = resolve_bases(config, panel)

    def _one(base: str) -> Snapshot:
        return analyze_window(panel, base, clip_sigma=config.clip_sigma)

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        snapshots = list(pool.map(_one, bases))

    with ArtifactWriter(config) as writer:
        for s in snapshots:
            write_snapshot(writer, s, panel, config.formats)
        if config.base == ALL_BASES and "csv" in config.formats:
            frame = reports_to_frame([s.report for s in snapshots])
            writer.write_text(ALL_BASES, "metrics.csv", frame_to_csv(frame))
    return snapshots


def snapshot(  # noqa: PLR0913
    inputs: InputsArg = None,
    cached: CachedOpt = None,
    output: OutputOpt = None,
    quote: QuoteOpt = None,
    base: BaseOpt = None,
    clip_sigma: ClipOpt = None,
    export_format: FormatOpt = None,
    invert: InvertOpt = False,
    max_gap: MaxGapOpt = None,
    max_missing_frac: MaxMissingOpt = None,
    workers: WorkersOpt = None,
) -> None:
    """Analyze the full sample: R and D matrices, MST exports and metrics per base."""
    with reporting_errors():
        config = build_config(
            "snapshot",
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
        )
        snapshots = run_snapshot(config)
    _print_summary(snapshots)
    printer.cprint("Snapshot written to", str(config.output_dir), highlight_idx=1, color="green")
