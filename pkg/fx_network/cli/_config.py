"""Run configuration, shared CLI options and error reporting."""

import contextlib
import json
from collections.abc import Iterator
from dataclasses import asdict, dataclass, field
from datetime import date
from pathlib import Path
from typing import Annotated

import pandas as pd
import typer

from fx_network.data import Cache, load_cached_panel, parse_panel
from fx_network.data.panel import panel_from_frame, panel_to_frame
from fx_network.data_models import CurrencyCode, RatePanel, WindowSpec, validate_code
from fx_network.errors import FxNetworkError, NotFoundError, ValidationError
from fx_network.settings import settings
from fx_network.utils import printer, utils

_MODULE = "cli"
ALL_BASES = "all"
EXPORT_FORMATS = ("dot", "graphml", "csv", "json")

InputsArg = Annotated[
    list[Path] | None,
    typer.Argument(help="Panel CSV files (`date,CODE1,CODE2,...`). Merged on common dates."),
]
CachedOpt = Annotated[
    str | None,
    typer.Option("--cached", help="Build the panel from cached downloads (comma-separated)."),
]
OutputOpt = Annotated[
    Path | None,
    typer.Option("--output", "-o", help="Output directory. Defaults to the output_dir setting."),
]
QuoteOpt = Annotated[
    str | None,
    typer.Option("--quote", "-q", help="Quote currency of the input columns."),
]
BaseOpt = Annotated[
    str | None,
    typer.Option("--base", "-b", help="Base currency, or 'all' for every panel currency."),
]
ClipOpt = Annotated[
    float | None,
    typer.Option("--clip-sigma", help="Clip normalized returns beyond this many sigma."),
]
InvertOpt = Annotated[
    bool,
    typer.Option("--invert", help="Input cells hold X/Q instead of Q/X."),
]
MaxGapOpt = Annotated[
    int | None,
    typer.Option("--max-gap", help="Longest run of missing days to forward-fill."),
]
MaxMissingOpt = Annotated[
    float | None,
    typer.Option("--max-missing-frac", help="Reject currencies missing more than this fraction."),
]
WorkersOpt = Annotated[
    int | None,
    typer.Option("--workers", "-w", help="Threads used across bases and windows."),
]
FormatOpt = Annotated[
    str | None,
    typer.Option("--format", "-f", help="Comma-separated subset of dot,graphml,csv,json."),
]
WindowOpt = Annotated[
    int | None,
    typer.Option("--window", help="Window length in trading days."),
]
StepOpt = Annotated[
    int | None,
    typer.Option("--step", help="Window step in trading days."),
]
BlocksOpt = Annotated[
    str | None,
    typer.Option(
        "--blocks",
        help="Block subintervals 'START:END,START:END' (ISO dates, inclusive), "
        "or 'config' to use the blocks setting.",
    ),
]


@dataclass
class RunConfig:
    """Everything that determines a run's artifacts."""

    command: str
    inputs: list[Path]
    cached: list[CurrencyCode]
    quote_currency: CurrencyCode
    base: str
    clip_sigma: float
    output_dir: Path
    formats: tuple[str, ...]
    invert: bool
    max_gap: int
    max_missing_frac: float
    workers: int
    window: WindowSpec | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        """Canonical JSON used for the config hash."""
        data = asdict(self)
        data.pop("output_dir")
        data.pop("workers")
        return json.dumps(data, sort_keys=True, default=str)

    def config_hash(self) -> str:
        """sha256 of the canonical config."""
        return utils.sha256_bytes(self.to_json().encode())


def parse_formats(value: str | None, /) -> tuple[str, ...]:
    """Validate the --format list; None selects every format."""
    if not value:
        return EXPORT_FORMATS
    formats = tuple(dict.fromkeys(f.strip().lower() for f in value.split(",") if f.strip()))
    unknown = [f for f in formats if f not in EXPORT_FORMATS]
    if unknown:
        raise ValidationError(
            f"Unknown format(s) {', '.join(unknown)}; choose from {', '.join(EXPORT_FORMATS)}",
            module=_MODULE,
        )
    return formats


def parse_codes(value: str | None, /) -> list[CurrencyCode]:
    """Comma-separated currency codes."""
    if not value:
        return []
    return [validate_code(c.strip().upper()) for c in value.split(",") if c.strip()]


def parse_blocks(value: str, /) -> tuple[tuple[date, date], ...]:
    """Parse 'START:END,START:END' or 'config' into inclusive date ranges."""
    if value.strip().lower() == "config":
        blocks = settings.blocks
        if not blocks:
            raise ValidationError("No blocks configured in the settings file", module=_MODULE)
        return tuple(blocks)
    ranges = []
    for chunk in value.split(","):
        try:
            start, end = chunk.strip().split(":")
            ranges.append((date.fromisoformat(start.strip()), date.fromisoformat(end.strip())))
        except ValueError as e:
            raise ValidationError(
                f"Invalid block {chunk!r}, expected START:END with ISO dates", module=_MODULE
            ) from e
    return tuple(ranges)


def window_spec(
    window: int | None,
    step: int | None,
    blocks: str | None,
) -> WindowSpec:
    """Sliding windows from --window/--step, or blocks from --blocks."""
    length = window if window is not None else settings.window_length
    step_days = step if step is not None else settings.window_step
    if blocks:
        return WindowSpec(
            length_days=length,
            step_days=step_days,
            mode="blocks",
            block_boundaries=parse_blocks(blocks),
        )
    return WindowSpec(length_days=length, step_days=step_days)


def build_config(  # noqa: PLR0913
    command: str,
    *,
    inputs: list[Path] | None,
    cached: str | None,
    quote: str | None,
    base: str | None,
    clip_sigma: float | None,
    output: Path | None,
    formats: str | None = None,
    invert: bool = False,
    max_gap: int | None = None,
    max_missing_frac: float | None = None,
    workers: int | None = None,
    window: WindowSpec | None = None,
    extra: dict | None = None,
) -> RunConfig:
    """Merge command-line values over settings."""
    quote_currency = validate_code((quote or settings.quote_currency).upper())
    base_value = (base or quote_currency).strip()
    if base_value.lower() == ALL_BASES:
        base_value = ALL_BASES
    else:
        base_value = validate_code(base_value.upper())
    cached_codes = parse_codes(cached)
    if not inputs and not cached_codes:
        raise ValidationError("Give panel CSV files or --cached codes", module=_MODULE)
    return RunConfig(
        command=command,
        inputs=list(inputs or []),
        cached=cached_codes,
        quote_currency=quote_currency,
        base=base_value,
        clip_sigma=clip_sigma if clip_sigma is not None else settings.clip_sigma,
        output_dir=output or settings.output_dir,
        formats=parse_formats(formats),
        invert=invert,
        max_gap=max_gap if max_gap is not None else settings.max_gap,
        max_missing_frac=(
            max_missing_frac if max_missing_frac is not None else settings.max_missing_frac
        ),
        workers=workers if workers is not None else settings.workers,
        window=window,
        extra=dict(extra or {}),
    )


def load_panel(config: RunConfig) -> RatePanel:
    """Read the configured inputs into one aligned panel.

    Several files are inner-joined on their dates after each is aligned.

    Raises:
        NotFoundError: An input file does not exist.

    """
    for path in config.inputs:
        if not path.is_file():
            raise NotFoundError(f"Input file not found: {path}", module="data-ingest")
    panels = [
        parse_panel(
            path.read_text(encoding="utf-8-sig"),
            config.quote_currency,
            invert=config.invert,
            max_gap=config.max_gap,
            max_missing_frac=config.max_missing_frac,
        )
        for path in config.inputs
    ]
    if config.cached:
        panels.append(
            load_cached_panel(
                Cache(),
                config.cached,
                config.quote_currency,
                invert=config.invert,
                max_gap=config.max_gap,
                max_missing_frac=config.max_missing_frac,
            )
        )
    if len(panels) == 1:
        return panels[0]
    frames = [panel_to_frame(p).drop(columns=[config.quote_currency]) for p in panels]
    merged = pd.concat(frames, axis=1, join="inner")
    if merged.columns.duplicated().any():
        dupes = sorted(set(merged.columns[merged.columns.duplicated()]))
        raise ValidationError(
            f"Currencies appear in more than one input: {', '.join(dupes)}", module="data-ingest"
        )
    rejected = {k: v for p in panels for k, v in p.rejected.items()}
    return panel_from_frame(
        merged,
        config.quote_currency,
        rejected=rejected,
        filled_cells=sum(p.filled_cells for p in panels),
    )


def resolve_bases(config: RunConfig, panel: RatePanel) -> list[CurrencyCode]:
    """Bases to analyze, checked against the panel."""
    if config.base == ALL_BASES:
        return list(panel.currencies)
    panel.index_of(config.base)
    return [config.base]


@contextlib.contextmanager
def reporting_errors() -> Iterator[None]:
    """Turn package errors into a stderr diagnostic and the matching exit code."""
    try:
        yield
    except typer.Exit:
        raise
    except FxNetworkError as e:
        printer.cprint("Error:", str(e), color="red", err=True)
        raise typer.Exit(code=e.exit_code) from e
    except Exception as e:
        printer.cprint("Internal error:", f"{type(e).__name__}: {e}", color="red", err=True)
        raise typer.Exit(code=1) from e
