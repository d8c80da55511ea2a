"""Synthetic panel generator command."""

from pathlib import Path
from typing import Annotated

import typer

from fx_network.cli._config import reporting_errors
from fx_network.data.panel import serialize_panel
from fx_network.errors import ValidationError
from fx_network.settings import settings
from fx_network.synth.generator import generate_panel, spec_from_mapping
from fx_network.utils import printer

DEFAULT_BLOCKS = [{"size": 10, "intra": 0.6}]
DEFAULT_DAYS = 1000


def parse_block_list(value: str, /) -> list[dict]:
    """Parse 'SIZE:INTRA[:hub],...' into block tables."""
    blocks = []
    for chunk in value.split(","):
        parts = [p.strip() for p in chunk.split(":")]
        hub = parts[2:] == ["hub"]
        if len(parts) != 2 + hub:
            raise ValidationError(
                f"Invalid block {chunk!r}, expected SIZE:INTRA or SIZE:INTRA:hub",
                module="synth-oracle",
            )
        try:
            blocks.append({"size": int(parts[0]), "intra": float(parts[1]), "hub": hub})
        except ValueError as e:
            raise ValidationError(
                f"Invalid block {chunk!r}: {e}", module="synth-oracle"
            ) from e
    return blocks


def synth(  # noqa: PLR0913
    path: Annotated[Path, typer.Argument(help="Destination CSV in the panel ingest schema.")],
    blocks: Annotated[
        str | None,
        typer.Option("--blocks", help="Blocks as 'SIZE:INTRA[:hub],...'. Defaults to settings."),
    ] = None,
    inter: Annotated[
        float | None, typer.Option("--inter", help="Correlation between blocks.")
    ] = None,
    days: Annotated[int | None, typer.Option("--days", "-T", help="Number of dates.")] = None,
    seed: Annotated[int | None, typer.Option("--seed", help="Generator seed.")] = None,
    idiosyncratic: Annotated[
        int | None, typer.Option("--idiosyncratic", help="Independent series to append.")
    ] = None,
    decoupled: Annotated[
        int | None,
        typer.Option("--decoupled", help="Index of a series that decouples linearly over time."),
    ] = None,
    quote: Annotated[
        str | None, typer.Option("--quote", "-q", help="Quote currency of the panel.")
    ] = None,
) -> None:
    """Write a synthetic rate panel with planted block correlations."""
    with reporting_errors():
        table = dict(settings.synth)
        overrides = {
            "blocks": parse_block_list(blocks) if blocks else None,
            "inter_correlation": inter,
            "T": days,
            "seed": seed,
            "idiosyncratic": idiosyncratic,
            "decoupled": decoupled,
            "quote_currency": quote.upper() if quote else None,
        }
        table.update({k: v for k, v in overrides.items() if v is not None})
        table.setdefault("blocks", DEFAULT_BLOCKS)
        table.setdefault("T", DEFAULT_DAYS)
        spec = spec_from_mapping(table)
        panel = generate_panel(spec)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".part")
        tmp.write_text(serialize_panel(panel), encoding="utf-8", newline="\n")
        tmp.replace(path)
    printer.cprint(
        f"Wrote {len(panel.currencies)} currencies x {panel.n_dates} dates to",
        str(path),
        highlight_idx=1,
        color="green",
    )
