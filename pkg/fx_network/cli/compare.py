"""Which of two reference currencies the rest of the market sits closer to."""

from typing import Annotated

import pandas as pd
import typer

from fx_network.cli._artifacts import ArtifactWriter, frame_to_csv
from fx_network.cli._config import (
    BaseOpt,
    BlocksOpt,
    CachedOpt,
    ClipOpt,
    InputsArg,
    InvertOpt,
    MaxGapOpt,
    MaxMissingOpt,
    OutputOpt,
    QuoteOpt,
    StepOpt,
    WindowOpt,
    WorkersOpt,
    build_config,
    load_panel,
    reporting_errors,
    resolve_bases,
    window_spec,
)
from fx_network.data_models import WindowSpec, validate_code
from fx_network.errors import ValidationError
from fx_network.evolution.rolling import proximity_rows, rolling_snapshots
from fx_network.utils import printer


def compare_bases(  # noqa: PLR0913
    base_a: Annotated[str, typer.Option("--base-a", help="First reference currency.")],
    base_b: Annotated[str, typer.Option("--base-b", help="Second reference currency.")],
    inputs: InputsArg = None,
    cached: CachedOpt = None,
    output: OutputOpt = None,
    quote: QuoteOpt = None,
    base: BaseOpt = None,
    clip_sigma: ClipOpt = None,
    window: WindowOpt = None,
    step: StepOpt = None,
    blocks: BlocksOpt = None,
    full: Annotated[
        bool, typer.Option("--full", help="Use the whole sample as a single window.")
    ] = False,
    invert: InvertOpt = False,
    max_gap: MaxGapOpt = None,
    max_missing_frac: MaxMissingOpt = None,
    workers: WorkersOpt = None,
) -> None:
    """Count, per window, the currencies closer to one reference than to the other."""
    with reporting_errors():
        a, b = validate_code(base_a.upper()), validate_code(base_b.upper())
        if a == b:
            raise ValidationError(f"Reference currencies must differ, got {a} twice", module="cli")
        spec = None if full else window_spec(window, step, blocks)
        config = build_config(
            "compare-bases",
            inputs=inputs,
            cached=cached,
            quote=quote,
            base=base,
            clip_sigma=clip_sigma,
            output=output,
            invert=invert,
            max_gap=max_gap,
            max_missing_frac=max_missing_frac,
            workers=workers,
            window=spec,
            extra={"base_a": a, "base_b": b, "full": full},
        )
        panel = load_panel(config)
        panel.index_of(a)
        panel.index_of(b)
        if config.window is None:
            config.window = WindowSpec(length_days=panel.n_dates, step_days=1)
        bases = [x for x in resolve_bases(config, panel) if x not in (a, b)]
        if not bases:
            raise ValidationError(
                "The network base must differ from both references", module="cli"
            )
        with ArtifactWriter(config) as writer:
            for x in bases:
                snapshots = rolling_snapshots(
                    panel, x, config.window, clip_sigma=config.clip_sigma, workers=config.workers
                )
                rows = [(d.isoformat(), ca, cb) for d, ca, cb in proximity_rows(snapshots, a, b)]
                frame = pd.DataFrame(rows, columns=["window_end_date", "count_a", "count_b"])
                writer.write_text(x, f"proximity_{a}_{b}.csv", frame_to_csv(frame))
                last = rows[-1]
                printer.cprint(
                    f"{x}: last window {last[0]}",
                    f"closer to {a}: {last[1]}, closer to {b}: {last[2]}",
                    highlight_idx=1,
                )
    printer.cprint("Proximity counts written to", str(config.output_dir), highlight_idx=1)
