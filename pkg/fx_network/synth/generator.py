"""Synthetic rate panels with a planted block correlation structure."""

import itertools
import string
from datetime import date
from pathlib import Path

import numpy as np
import pandas as pd

from fx_network.data.panel import panel_from_frame, serialize_panel
from fx_network.data_models import BlockModelSpec, BlockSpec, CurrencyCode, RatePanel
from fx_network.errors import ConfigError
from fx_network.utils import utils

_MODULE = "synth-oracle"


def series_codes(n: int, exclude: CurrencyCode) -> list[CurrencyCode]:
    """First n three-letter codes in lexicographic order, skipping `exclude`."""
    codes = (
        "".join(letters)
        for letters in itertools.product(string.ascii_uppercase, repeat=3)
        if "".join(letters) != exclude
    )
    return list(itertools.islice(codes, n))


def _factor(correlation: np.ndarray) -> np.ndarray:
    """Matrix A with A A^T = correlation, negative eigenvalue noise clamped to 0."""
    eigenvalues, vectors = np.linalg.eigh(correlation)
    return vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))


def generate_returns(spec: BlockModelSpec) -> np.ndarray:
    """Daily log returns of Q/X, shape (n_series, T - 1)."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n_days = spec.T - 1
    z = rng.standard_normal((n_days, spec.n_series))
    correlated = z @ _factor(spec.target_correlation()).T
    if spec.decoupled is not None:
        # Coupling fades linearly from 1 to 0; noise keeps the variance fixed.
        w = 1.0 - np.arange(n_days) / max(n_days - 1, 1)
        noise = rng.standard_normal(n_days)
        k = spec.decoupled
        correlated[:, k] = w * correlated[:, k] + np.sqrt(1.0 - w**2) * noise
    scale = spec.volatilities() * spec.daily_volatility
    return (correlated * scale).T


def generate_panel(spec: BlockModelSpec) -> RatePanel:
    """Rate panel whose returns follow the block model; the same seed gives the same panel.

    Every series starts at 1.0 and the quote currency is a constant row.
    """
    returns = generate_returns(spec)
    log_rates = np.hstack([np.zeros((spec.n_series, 1)), np.cumsum(returns, axis=1)])
    dates = [d.date() for d in pd.bdate_range(start=spec.start_date, periods=spec.T)]
    codes = series_codes(spec.n_series, spec.quote_currency)
    frame = pd.DataFrame(np.exp(log_rates).T, index=pd.Index(dates, name="date"), columns=codes)
    utils.log(
        f"Generated {spec.n_series} series x {spec.T} days (seed {spec.seed}, "
        f"{len(spec.blocks)} blocks)"
    )
    return panel_from_frame(frame, spec.quote_currency)


def write_panel(spec: BlockModelSpec, path: Path) -> Path:
    """Generate a panel and write it in the ingest CSV schema."""
    path.write_text(serialize_panel(generate_panel(spec)))
    return path


def spec_from_mapping(table: dict) -> BlockModelSpec:
    """Build a block model from a config table.

    Expected keys: `blocks` (list of {size, intra, hub}), `inter_correlation`,
    `T`, `seed`, and optionally `idiosyncratic`, `decoupled`, `quote_currency`,
    `start_date`, `daily_volatility`.

    Raises:
        ConfigError: Missing or malformed keys.

    """
    try:
        blocks = tuple(
            BlockSpec(size=int(b["size"]), intra=float(b["intra"]), hub=bool(b.get("hub", False)))
            for b in table.get("blocks", [])
        )
        kwargs = {
            "blocks": blocks,
            "inter_correlation": float(table.get("inter_correlation", 0.0)),
            "T": int(table["T"]),
            "seed": int(table.get("seed", 0)),
            "idiosyncratic": int(table.get("idiosyncratic", 0)),
            "decoupled": None if table.get("decoupled") is None else int(table["decoupled"]),
        }
        if "quote_currency" in table:
            kwargs["quote_currency"] = str(table["quote_currency"])
        if "start_date" in table:
            start = table["start_date"]
            kwargs["start_date"] = start if isinstance(start, date) else date.fromisoformat(start)
        if "daily_volatility" in table:
            kwargs["daily_volatility"] = float(table["daily_volatility"])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"Invalid synth table: {e}", module=_MODULE) from e
    return BlockModelSpec(**kwargs)
