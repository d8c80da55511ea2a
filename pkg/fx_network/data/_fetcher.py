"""Download raw per-currency rate files into the cache."""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import pandas as pd
import requests

from fx_network.constants import DEFAULT_MAX_GAP, DEFAULT_MAX_MISSING_FRAC
from fx_network.data._cache import Cache
from fx_network.data.panel import align, panel_from_frame
from fx_network.data_models import CurrencyCode, RatePanel, validate_code
from fx_network.errors import (
    FetchError,
    NotFoundError,
    PanelParseError,
    SizeError,
    ValidationError,
)
from fx_network.settings import settings
from fx_network.utils import utils

_MODULE = "data-ingest"


@dataclass
class FetchReport:
    """Outcome of a fetch run."""

    downloaded: list[CurrencyCode] = field(default_factory=list)
    cache_hits: list[CurrencyCode] = field(default_factory=list)
    failures: dict[CurrencyCode, str] = field(default_factory=dict)
    paths: dict[CurrencyCode, Path] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Whether every currency is available in the cache."""
        return not self.failures

    def raise_for_failures(self) -> None:
        """Raise a FetchError naming every failed currency."""
        if self.failures:
            detail = "; ".join(f"{code}: {why}" for code, why in sorted(self.failures.items()))
            raise FetchError(
                f"{len(self.failures)} of {len(self.failures) + len(self.paths)} "
                f"downloads failed ({detail})",
                failures=dict(self.failures),
            )


def _render_url(
    url_template: str,
    code: CurrencyCode,
    date_range: tuple[date, date] | None,
) -> str:
    start, end = date_range if date_range else (None, None)
    return url_template.format(
        code=code,
        start=start.isoformat() if start else "",
        end=end.isoformat() if end else "",
    )


def _download(url: str, *, retries: int, timeout: float, backoff: float) -> str:
    """GET a URL with retries, returning the non-empty body."""
    last_error = "no attempt made"
    for attempt in range(1, retries + 1):
        try:
            resp = requests.get(url, timeout=timeout)
            if resp.status_code == 200:  # noqa: PLR2004
                if not resp.text.strip():
                    # An empty body will not improve on retry.
                    raise FetchError(f"empty body from {url}", failures={})
                return resp.text
            last_error = f"HTTP {resp.status_code}"
        except requests.RequestException as e:
            last_error = f"{type(e).__name__}: {e}"
        utils.log(f"Attempt {attempt}/{retries} for {url} failed: {last_error}", level="WARN")
        if attempt < retries:
            time.sleep(backoff * attempt)
    raise FetchError(f"{last_error} after {retries} attempts", failures={})


def fetch_panel(
    url_template: str,
    currency_list: list[CurrencyCode],
    date_range: tuple[date, date] | None = None,
    *,
    cache: Cache | None = None,
    retries: int | None = None,
    timeout: float | None = None,
    backoff: float = 0.5,
    workers: int | None = None,
) -> FetchReport:
    """Download one raw file per currency into the cache directory.

    Currencies already cached are skipped, so re-running is idempotent.

    Args:
        url_template: URL with a `{code}` placeholder, optionally `{start}`/`{end}`.
        currency_list: Currencies to download.
        date_range: Optional inclusive (start, end) passed to the template.
        cache: Cache to write into. Defaults to the configured cache path.
        retries: Attempts per currency. Defaults to settings.fetch_retries.
        timeout: HTTP timeout in seconds. Defaults to settings.fetch_timeout.
        backoff: Seconds multiplied by the attempt number between retries.
        workers: Concurrent downloads. Defaults to settings.workers.

    Returns:
        FetchReport listing downloads, cache hits and per-currency failures.

    """
    if "{code}" not in url_template:
        raise ValidationError("URL template needs a {code} placeholder", module=_MODULE)
    codes = [validate_code(c) for c in dict.fromkeys(currency_list)]
    cache = cache or Cache()
    retries = retries if retries is not None else settings.fetch_retries
    timeout = timeout if timeout is not None else settings.fetch_timeout
    report = FetchReport()

    def _fetch_one(code: CurrencyCode) -> tuple[CurrencyCode, str, str | None]:
        handler = cache.get_currency_cache(code)
        with cache.lock_for(code):
            if handler.exists():
                return code, "hit", None
            url = _render_url(url_template, code, date_range)
            try:
                body = _download(url, retries=retries, timeout=timeout, backoff=backoff)
            except FetchError as e:
                return code, "failed", e.message
            handler.write(body)
        return code, "downloaded", None

    with ThreadPoolExecutor(max_workers=workers or settings.workers) as pool:
        outcomes = list(pool.map(_fetch_one, codes))

    for code, status, reason in outcomes:
        if status == "failed":
            report.failures[code] = reason or "unknown error"
            continue
        report.paths[code] = cache.get_currency_cache(code).path
        (report.cache_hits if status == "hit" else report.downloaded).append(code)
    utils.log(
        f"Fetch: {len(report.downloaded)} downloaded, {len(report.cache_hits)} cache hits, "
        f"{len(report.failures)} failed",
        level="INFO",
    )
    return report


def load_cached_panel(
    cache: Cache,
    currencies: list[CurrencyCode],
    quote_currency: CurrencyCode,
    *,
    date_range: tuple[date, date] | None = None,
    invert: bool = False,
    max_gap: int = DEFAULT_MAX_GAP,
    max_missing_frac: float = DEFAULT_MAX_MISSING_FRAC,
) -> RatePanel:
    """Merge cached `date,value` files into one aligned panel.

    Raises:
        NotFoundError: A currency has no cached file.
        PanelParseError: A cached file is not a two-column date/value CSV.

    """
    columns = {}
    for code in currencies:
        handler = cache.get_currency_cache(code)
        if not handler.exists():
            raise NotFoundError(f"No cached file for {code}", module=_MODULE, context=code)
        raw = pd.read_csv(handler.path, dtype=str, keep_default_na=False)
        if raw.shape[1] != 2:  # noqa: PLR2004
            raise PanelParseError(f"{handler.path} must have exactly two columns", line=1)
        try:
            index = pd.Index([date.fromisoformat(d.strip()) for d in raw.iloc[:, 0]])
            cells = raw.iloc[:, 1].str.strip()
            values = pd.to_numeric(cells.mask(cells == ""), errors="raise")
        except ValueError as e:
            raise PanelParseError(f"{handler.path}: {e}") from e
        series = pd.Series(values.to_numpy(dtype=float), index=index, name=code)
        columns[code] = series[~series.index.duplicated(keep="last")]

    frame = pd.concat(columns, axis=1).sort_index()
    if date_range:
        start, end = date_range
        frame = frame[(frame.index >= start) & (frame.index <= end)]
    if invert:
        frame = 1.0 / frame
    if (frame <= 0).any().any():
        raise ValidationError("Cached files contain non-positive rates", module=_MODULE)
    aligned, rejected, filled = align(frame, max_gap=max_gap, max_missing_frac=max_missing_frac)
    if aligned.shape[1] == 0 or len(aligned) == 0:
        raise SizeError("No currency or date survived alignment", module=_MODULE)
    return panel_from_frame(aligned, quote_currency, rejected=rejected, filled_cells=filled)
