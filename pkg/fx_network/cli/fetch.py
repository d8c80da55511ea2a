"""Download command filling the per-currency cache."""

from datetime import date
from typing import Annotated

import typer
from rich.console import Console
from rich.table import Table

from fx_network.cli._config import WorkersOpt, parse_codes, reporting_errors
from fx_network.data import Cache, FetchReport, fetch_panel
from fx_network.errors import ValidationError
from fx_network.utils import printer


def _print_report(report: FetchReport) -> None:
    table = Table(show_header=True, header_style="bold cyan")
    table.add_column("Currency", style="cyan")
    table.add_column("Status")
    table.add_column("Detail", style="bright_black")
    rows = [(c, "[green]downloaded[/green]", str(report.paths[c])) for c in report.downloaded]
    rows += [(c, "[blue]cached[/blue]", str(report.paths[c])) for c in report.cache_hits]
    rows += [(c, "[red]failed[/red]", why) for c, why in report.failures.items()]
    for row in sorted(rows):
        table.add_row(*row)
    Console().print(table)


def _parse_date(value: str | None, flag: str) -> date | None:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError as e:
        raise ValidationError(f"{flag} must be an ISO date, got {value!r}", module="cli") from e


def fetch(  # noqa: PLR0913
    url: Annotated[
        str,
        typer.Option(
            "--url",
            help="URL template with {code}; {start} and {end} are filled from --start/--end.",
        ),
    ],
    currencies: Annotated[
        str, typer.Option("--currencies", "-c", help="Comma-separated currency codes.")
    ],
    start: Annotated[str | None, typer.Option("--start", help="First date (ISO).")] = None,
    end: Annotated[str | None, typer.Option("--end", help="Last date (ISO).")] = None,
    retries: Annotated[
        int | None, typer.Option("--retries", help="Attempts per currency.")
    ] = None,
    timeout: Annotated[
        float | None, typer.Option("--timeout", help="HTTP timeout in seconds.")
    ] = None,
    clear: Annotated[
        bool, typer.Option("--clear", help="Empty the cache before downloading.")
    ] = False,
    workers: WorkersOpt = None,
) -> None:
    """Download one raw rate file per currency into the cache, skipping cached ones."""
    with reporting_errors():
        codes = parse_codes(currencies)
        if not codes:
            raise ValidationError("No currencies given", module="cli")
        first, last = _parse_date(start, "--start"), _parse_date(end, "--end")
        if (first is None) != (last is None):
            raise ValidationError("--start and --end must be given together", module="cli")
        date_range = (first, last) if first and last else None
        cache = Cache()
        if clear:
            cache.clear()
        report = fetch_panel(
            url,
            codes,
            date_range,
            cache=cache,
            retries=retries,
            timeout=timeout,
            workers=workers,
        )
        _print_report(report)
        report.raise_for_failures()
    printer.cprint("Cache ready at", str(cache.cache_path), highlight_idx=1, color="green")
