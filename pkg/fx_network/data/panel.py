"""Rate panel parsing, alignment and cross-rate synthesis."""

import io
from datetime import date

import numpy as np
import pandas as pd

from fx_network.constants import DEFAULT_MAX_GAP, DEFAULT_MAX_MISSING_FRAC, FLOAT_FORMAT
from fx_network.data_models import CrossRateSeries, CurrencyCode, RatePanel, validate_code
from fx_network.errors import NotFoundError, PanelParseError, SizeError, ValidationError
from fx_network.utils import utils

_MODULE = "data-ingest"
_QUOTE_TOLERANCE = 1e-12


def _check_field_counts(content: str, /) -> None:
    """Reject rows whose field count differs from the header's."""
    lines = content.splitlines()
    if not lines:
        return
    expected = lines[0].count(",") + 1
    for number, line in enumerate(lines[1:], start=2):
        if line.strip() and line.count(",") + 1 != expected:
            raise PanelParseError(
                f"Malformed row: expected {expected} fields, got {line.count(',') + 1}",
                line=number,
            )


def _read_frame(content: str, /) -> pd.DataFrame:
    """Read raw CSV text into a string frame, reporting malformed rows by line."""
    _check_field_counts(content)
    try:
        frame = pd.read_csv(
            io.StringIO(content),
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError as e:
        raise PanelParseError("File is empty") from e
    except pd.errors.ParserError as e:
        # pandas reports "Expected 3 fields in line 5, saw 4"
        msg = str(e).strip()
        line = None
        if " line " in msg:
            tail = msg.split(" line ", 1)[1]
            digits = "".join(ch for ch in tail.split(",", 1)[0] if ch.isdigit())
            line = int(digits) if digits else None
        raise PanelParseError(f"Malformed row: {msg}", line=line) from e

    if not len(frame.columns) or frame.columns[0].strip().lower() != "date":
        raise PanelParseError("Header must start with 'date'", line=1)
    if len(frame.columns) < 2:  # noqa: PLR2004
        raise PanelParseError("Header lists no currency columns", line=1)
    return frame


def _parse_cells(frame: pd.DataFrame, /) -> tuple[list[date], list[str], np.ndarray]:
    """Convert string cells to dates and floats with line-numbered errors."""
    codes = []
    for col in frame.columns[1:]:
        try:
            codes.append(validate_code(str(col).strip()))
        except ValidationError as e:
            raise PanelParseError(str(e.message), line=1) from e
    if len(set(codes)) != len(codes):
        raise PanelParseError("Duplicate currency column in header", line=1)

    dates: list[date] = []
    values = np.full((len(frame), len(codes)), np.nan)
    for i, row in enumerate(frame.itertuples(index=False, name=None)):
        line = i + 2
        try:
            dates.append(date.fromisoformat(row[0].strip()))
        except ValueError as e:
            raise PanelParseError(f"Invalid ISO date {row[0]!r}", line=line) from e
        for j, cell in enumerate(row[1:]):
            text = cell.strip()
            if not text:
                continue
            try:
                value = float(text)
            except ValueError as e:
                raise PanelParseError(f"Invalid number {text!r}", line=line) from e
            if not np.isfinite(value) or value <= 0:
                raise ValidationError(
                    f"Non-positive rate {text} for {codes[j]} on {dates[-1]}",
                    module=_MODULE,
                    context=codes[j],
                )
            values[i, j] = value

    seen: dict[date, int] = {}
    for i, d in enumerate(dates):
        if d in seen:
            raise ValidationError(
                f"Duplicate date {d} on lines {seen[d] + 2} and {i + 2}", module=_MODULE
            )
        seen[d] = i
    return dates, codes, values


def _fill_short_gaps(column: pd.Series, max_gap: int, /) -> tuple[pd.Series, int]:
    """Forward-fill runs of missing values no longer than max_gap.

    Longer runs, and gaps with no earlier observation, stay missing.
    """
    missing = column.isna()
    if not missing.any() or max_gap <= 0:
        return column, 0
    run_id = (missing != missing.shift()).cumsum()
    run_length = missing.groupby(run_id).transform("sum")
    fillable = missing & (run_length <= max_gap)
    filled = column.ffill().where(fillable, column)
    return filled, int(filled.notna().sum() - column.notna().sum())


def align(
    frame: pd.DataFrame,
    *,
    max_gap: int = DEFAULT_MAX_GAP,
    max_missing_frac: float = DEFAULT_MAX_MISSING_FRAC,
) -> tuple[pd.DataFrame, dict[CurrencyCode, str], int]:
    """Apply the missing-data policy to a date-indexed rate frame.

    Currencies missing more than max_missing_frac of the dates are rejected,
    remaining gaps of at most max_gap days are forward-filled, and any date
    still lacking a value is dropped.

    Args:
        frame: Rates indexed by date, one column per currency, NaN = missing.
        max_gap: Longest run of consecutive missing days to forward-fill.
        max_missing_frac: Rejection threshold on the missing fraction.

    Returns:
        Tuple of (aligned frame, rejected currency -> reason, filled cell count).

    """
    frame = frame.sort_index()
    rejected: dict[CurrencyCode, str] = {}
    n_dates = len(frame)
    for code in frame.columns:
        missing = int(frame[code].isna().sum())
        frac = missing / n_dates if n_dates else 1.0
        if frac > max_missing_frac:
            rejected[code] = (
                f"missing {missing} of {n_dates} dates ({frac:.1%} > {max_missing_frac:.1%})"
            )
            utils.log(f"Rejected {code}: {rejected[code]}", level="WARN")
    kept = frame.drop(columns=list(rejected))

    filled_total = 0
    for code in kept.columns:
        kept[code], filled = _fill_short_gaps(kept[code], max_gap)
        filled_total += filled
    before = len(kept)
    kept = kept.dropna(axis=0, how="any")
    dropped = before - len(kept)
    if filled_total or dropped:
        utils.log(f"Forward-filled {filled_total} cells, dropped {dropped} incomplete dates")
    return kept, rejected, filled_total


def panel_from_frame(
    frame: pd.DataFrame,
    quote_currency: CurrencyCode,
    *,
    rejected: dict[CurrencyCode, str] | None = None,
    filled_cells: int = 0,
) -> RatePanel:
    """Build a panel from an aligned frame, adding the quote currency row if absent.

    Raises:
        ValidationError: If a supplied quote column is not identically 1.

    """
    validate_code(quote_currency)
    frame = frame.copy()
    if quote_currency in frame.columns and not np.allclose(
        frame[quote_currency].to_numpy(), 1.0, rtol=0, atol=_QUOTE_TOLERANCE
    ):
        raise ValidationError(
            f"Quote currency column {quote_currency} must be constant 1",
            module=_MODULE,
            context=quote_currency,
        )
    frame[quote_currency] = 1.0
    frame = frame[sorted(frame.columns)]
    return RatePanel(
        quote_currency=quote_currency,
        currencies=tuple(frame.columns),
        dates=tuple(frame.index),
        rates=frame.to_numpy(dtype=float).T,
        rejected=dict(rejected or {}),
        filled_cells=filled_cells,
    )


def parse_panel(
    file_content: str,
    quote_currency: CurrencyCode,
    *,
    invert: bool = False,
    max_gap: int = DEFAULT_MAX_GAP,
    max_missing_frac: float = DEFAULT_MAX_MISSING_FRAC,
) -> RatePanel:
    """Parse a `date,CODE1,CODE2,...` CSV into an aligned panel.

    Args:
        file_content: CSV text, ISO dates, '.' decimal separator, empty cell = missing.
        quote_currency: Currency every column is quoted against.
        invert: Cells hold X/Q instead of Q/X; take reciprocals on ingest.
        max_gap: Longest run of missing days to forward-fill.
        max_missing_frac: Currencies missing more than this fraction are rejected.

    Returns:
        Aligned RatePanel.

    Raises:
        PanelParseError: Malformed row, with its line number.
        ValidationError: Non-positive rate or duplicate date.
        SizeError: Nothing survives alignment.

    """
    frame = _read_frame(file_content)
    dates, codes, values = _parse_cells(frame)
    if invert:
        values = 1.0 / values
    raw = pd.DataFrame(values, index=pd.Index(dates, name="date"), columns=codes)
    aligned, rejected, filled = align(raw, max_gap=max_gap, max_missing_frac=max_missing_frac)
    if aligned.shape[1] == 0 or len(aligned) == 0:
        raise SizeError("No currency or date survived alignment", module=_MODULE)
    panel = panel_from_frame(aligned, quote_currency, rejected=rejected, filled_cells=filled)
    utils.log(
        f"Parsed panel: {len(panel.currencies)} currencies x {panel.n_dates} dates "
        f"(quote {quote_currency}, {len(rejected)} rejected)",
        level="INFO",
    )
    return panel


def panel_to_frame(panel: RatePanel, /) -> pd.DataFrame:
    """Panel as a date-indexed frame, one column per currency."""
    return pd.DataFrame(
        panel.rates.T,
        index=pd.Index(panel.dates, name="date"),
        columns=list(panel.currencies),
    )


def serialize_panel(panel: RatePanel, /) -> str:
    """Write a panel in the ingest CSV schema at full precision."""
    frame = panel_to_frame(panel)
    frame.index = [d.isoformat() for d in frame.index]
    frame.index.name = "date"
    return frame.to_csv(float_format=FLOAT_FORMAT, lineterminator="\n")


def cross_rates(panel: RatePanel, base: CurrencyCode) -> list[CrossRateSeries]:
    """Express every other panel currency against one base currency.

    B/X = (Q/X) / (Q/B): units of X per unit of B. The base itself is
    excluded, so the result has one series fewer than the panel has rows.

    Raises:
        NotFoundError: If the base is not in the panel.

    """
    if base not in panel.currencies:
        raise NotFoundError(f"Base {base} not in panel", module=_MODULE, context=base)
    base_row = panel.row(base)
    return [
        CrossRateSeries(base=base, price=code, values=panel.rates[i] / base_row)
        for i, code in enumerate(panel.currencies)
        if code != base
    ]


def requote(panel: RatePanel, new_quote: CurrencyCode) -> RatePanel:
    """Re-denominate a panel in another quote currency of the same panel."""
    new_row = panel.row(new_quote)
    rates = panel.rates / new_row
    rates[panel.index_of(new_quote)] = 1.0
    return RatePanel(
        quote_currency=new_quote,
        currencies=panel.currencies,
        dates=panel.dates,
        rates=rates,
        rejected=dict(panel.rejected),
        filled_cells=panel.filled_cells,
    )


def panel_slice(panel: RatePanel, start: int, end: int) -> RatePanel:
    """Contiguous slice [start, end) of the panel's dates."""
    if not 0 <= start < end <= panel.n_dates:
        raise SizeError(
            f"Slice [{start}, {end}) outside panel of {panel.n_dates} dates", module=_MODULE
        )
    return RatePanel(
        quote_currency=panel.quote_currency,
        currencies=panel.currencies,
        dates=panel.dates[start:end],
        rates=panel.rates[:, start:end],
    )
