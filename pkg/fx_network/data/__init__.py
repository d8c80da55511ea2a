"""Rate panel ingest: parsing, alignment, cross rates and downloads."""

from fx_network.data._cache import Cache
from fx_network.data._fetcher import FetchReport, fetch_panel, load_cached_panel
from fx_network.data.panel import (
    cross_rates,
    panel_slice,
    parse_panel,
    requote,
    serialize_panel,
)

__all__ = [
    "Cache",
    "FetchReport",
    "cross_rates",
    "fetch_panel",
    "load_cached_panel",
    "panel_slice",
    "parse_panel",
    "requote",
    "serialize_panel",
]
