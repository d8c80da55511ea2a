"""Normalized, clipped log-return matrices."""

import numpy as np

from fx_network.constants import DEFAULT_CLIP_SIGMA, DEGENERATE_SPREAD_TOLERANCE
from fx_network.data_models import CrossRateSeries, ReturnMatrix
from fx_network.errors import DegenerateSeriesError, DomainError, SizeError
from fx_network.utils import utils

_MODULE = "returns-pipeline"


def log_returns(series: CrossRateSeries | np.ndarray) -> np.ndarray:
    """Daily log returns ln(v[i+1]) - ln(v[i]).

    Raises:
        DomainError: A value is not strictly positive.
        SizeError: Fewer than two values.

    """
    values = np.asarray(series.values if isinstance(series, CrossRateSeries) else series, float)
    if values.size < 2:  # noqa: PLR2004
        raise SizeError("Log returns need at least two values", module=_MODULE)
    if np.any(~np.isfinite(values)) or np.any(values <= 0):
        raise DomainError("Log returns need strictly positive values", module=_MODULE)
    return np.diff(np.log(values))


def normalize(returns: np.ndarray) -> np.ndarray:
    """Shift to zero mean and scale to unit population variance (divide by T).

    A series whose spread is rounding noise relative to its magnitude counts
    as constant; floating-point means of constant vectors are not exact.

    Raises:
        DegenerateSeriesError: The series has zero variance.

    """
    values = np.asarray(returns, dtype=float)
    if values.size < 2:  # noqa: PLR2004
        raise SizeError("Normalization needs at least two values", module=_MODULE)
    centered = values - values.mean()
    std = np.sqrt(np.mean(centered**2))
    scale = float(np.max(np.abs(values)))
    if not np.isfinite(std) or std <= DEGENERATE_SPREAD_TOLERANCE * scale:
        raise DegenerateSeriesError("Series has zero variance", module=_MODULE)
    return centered / std


def clip_extremes(
    matrix: ReturnMatrix,
    threshold: float = DEFAULT_CLIP_SIGMA,
    *,
    renormalize: bool = True,
) -> ReturnMatrix:
    """Replace entries beyond +/-threshold by the threshold value.

    Rows that had entries clipped are re-normalized once; no fixed-point
    iteration follows, so entries left above the threshold by that pass are
    only reported.

    Args:
        matrix: Normalized return matrix.
        threshold: Clip level in units of the row standard deviation.
        renormalize: Re-normalize clipped rows.

    Returns:
        New ReturnMatrix with `clipped` holding the number of replaced entries.

    """
    values = np.array(matrix.values, dtype=float)
    mask = np.abs(values) > threshold
    count = int(mask.sum())
    if count == 0:
        return ReturnMatrix(
            base=matrix.base,
            price_currencies=matrix.price_currencies,
            values=matrix.values,
            clipped=matrix.clipped,
        )
    values = np.where(mask, np.sign(values) * threshold, values)
    if renormalize:
        for i in np.flatnonzero(mask.any(axis=1)):
            values[i] = _normalize_row(values[i], matrix, i)
        residual = int((np.abs(values) > threshold).sum())
        if residual:
            utils.log(
                f"{residual} entries exceed {threshold} sigma after re-normalization "
                f"(base {matrix.base})",
                level="WARN",
            )
    utils.log(f"Clipped {count} returns beyond {threshold} sigma (base {matrix.base})")
    return ReturnMatrix(
        base=matrix.base,
        price_currencies=matrix.price_currencies,
        values=values,
        clipped=matrix.clipped + count,
    )


def _normalize_row(row: np.ndarray, matrix: ReturnMatrix, i: int) -> np.ndarray:
    try:
        return normalize(row)
    except DegenerateSeriesError as e:
        price = matrix.price_currencies[i]
        raise DegenerateSeriesError(
            f"{matrix.base}/{price} returns have zero variance", module=_MODULE, currency=price
        ) from e


def build_return_matrix(
    series: list[CrossRateSeries],
    clip_sigma: float = DEFAULT_CLIP_SIGMA,
) -> ReturnMatrix:
    """Run log returns, normalization, clipping and one re-normalization.

    All series must share a base currency and a length.

    Raises:
        SizeError: No series, or series of different lengths.
        DegenerateSeriesError: A currency's returns have zero variance.

    """
    if not series:
        raise SizeError("No cross-rate series to process", module=_MODULE)
    base = series[0].base
    lengths = {len(s.values) for s in series}
    if len(lengths) != 1:
        raise SizeError(f"Cross-rate series differ in length: {sorted(lengths)}", module=_MODULE)

    rows = []
    for s in series:
        try:
            rows.append(normalize(log_returns(s)))
        except DegenerateSeriesError as e:
            raise DegenerateSeriesError(
                f"{base}/{s.price} returns have zero variance",
                module=_MODULE,
                currency=s.price,
            ) from e
    matrix = ReturnMatrix(
        base=base,
        price_currencies=tuple(s.price for s in series),
        values=np.vstack(rows),
    )
    return clip_extremes(matrix, clip_sigma)
