"""Module collecting all data models."""

import re
from dataclasses import dataclass, field
from datetime import date
from typing import Literal, NamedTuple

import numpy as np

from fx_network.constants import MIN_WINDOW_LENGTH, PSD_TOLERANCE
from fx_network.errors import NotFoundError, ValidationError

CurrencyCode = str
EdgePair = tuple[CurrencyCode, CurrencyCode]

_CODE_PATTERN = re.compile(r"^[A-Z]{3}$")


def validate_code(code: str, /) -> CurrencyCode:
    """Validate a 3-letter uppercase currency code.

    Args:
        code: Candidate code, e.g. "EUR" or "XAU".

    Returns:
        The code unchanged.

    Raises:
        ValidationError: If the code is not exactly three letters A-Z.

    """
    if not isinstance(code, str) or not _CODE_PATTERN.match(code):
        raise ValidationError(f"Invalid currency code {code!r}", module="data-ingest")
    return code


def _frozen_array(values: np.ndarray, /) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class RatePanel:
    """Aligned daily quotes, one row per currency.

    Row X holds the Q/X rate, i.e. units of X paid for one unit of the quote
    currency Q. The quote currency is itself a row of constant 1.
    """

    quote_currency: CurrencyCode
    currencies: tuple[CurrencyCode, ...]
    dates: tuple[date, ...]
    rates: np.ndarray
    # Currency -> reason, for currencies dropped during ingest.
    rejected: dict[CurrencyCode, str] = field(default_factory=dict)
    filled_cells: int = 0

    def __post_init__(self) -> None:
        """Validate panel invariants and freeze the rate matrix."""
        for code in self.currencies:
            validate_code(code)
        if len(set(self.currencies)) != len(self.currencies):
            raise ValidationError("Duplicate currency in panel", module="data-ingest")
        if self.quote_currency not in self.currencies:
            raise ValidationError(
                f"Quote currency {self.quote_currency} is not a panel row", module="data-ingest"
            )
        rates = np.asarray(self.rates, dtype=float)
        if rates.shape != (len(self.currencies), len(self.dates)):
            raise ValidationError(
                f"Rate matrix shape {rates.shape} does not match "
                f"{len(self.currencies)} currencies x {len(self.dates)} dates",
                module="data-ingest",
            )
        if not np.all(np.isfinite(rates)) or np.any(rates <= 0):
            raise ValidationError(
                "Rates must be finite and strictly positive", module="data-ingest"
            )
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise ValidationError("Dates must be strictly increasing", module="data-ingest")
        object.__setattr__(self, "rates", _frozen_array(rates))

    @property
    def n_dates(self) -> int:
        """Number of trading days."""
        return len(self.dates)

    def index_of(self, code: CurrencyCode, /) -> int:
        """Row index of a currency.

        Raises:
            NotFoundError: If the currency is not in the panel.

        """
        try:
            return self.currencies.index(code)
        except ValueError:
            raise NotFoundError(
                f"Currency {code} not in panel", module="data-ingest", context=code
            ) from None

    def row(self, code: CurrencyCode, /) -> np.ndarray:
        """Rates of one currency across all dates."""
        return self.rates[self.index_of(code)]


@dataclass(frozen=True)
class CrossRateSeries:
    """Units of `price` paid for one unit of `base`, per date."""

    base: CurrencyCode
    price: CurrencyCode
    values: np.ndarray

    def __post_init__(self) -> None:
        """Check base and price differ and freeze the values."""
        if self.base == self.price:
            raise ValidationError(
                f"Cross rate needs distinct currencies, got {self.base}/{self.price}",
                module="data-ingest",
            )
        object.__setattr__(self, "values", _frozen_array(self.values))


@dataclass(frozen=True)
class ReturnMatrix:
    """Normalized, clipped log returns of every B/X series (one row per X)."""

    base: CurrencyCode
    price_currencies: tuple[CurrencyCode, ...]
    values: np.ndarray
    clipped: int = 0

    def __post_init__(self) -> None:
        """Freeze the values."""
        object.__setattr__(self, "values", _frozen_array(self.values))

    @property
    def n(self) -> int:
        """Number of rows."""
        return self.values.shape[0]

    @property
    def T(self) -> int:  # noqa: N802
        """Number of return days."""
        return self.values.shape[1]


@dataclass(frozen=True)
class CorrelationNetwork:
    """Complete weighted network of one base currency."""

    base: CurrencyCode
    nodes: tuple[CurrencyCode, ...]
    R: np.ndarray
    weights: np.ndarray
    distances: np.ndarray

    def __post_init__(self) -> None:
        """Freeze the matrices."""
        for name in ("R", "weights", "distances"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name)))

    @property
    def n(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    def index_of(self, node: CurrencyCode, /) -> int:
        """Position of a node in the matrices."""
        try:
            return self.nodes.index(node)
        except ValueError:
            raise NotFoundError(
                f"Node {node} not in the {self.base}-based network",
                module="correlation-net",
                context=node,
            ) from None


class TreeEdge(NamedTuple):
    """One spanning tree edge, endpoints ordered lexicographically."""

    source: CurrencyCode
    target: CurrencyCode
    distance: float
    weight: float
    anticorrelated: bool

    @property
    def pair(self) -> EdgePair:
        """Unordered endpoint pair in canonical order."""
        return (self.source, self.target)


@dataclass(frozen=True)
class SpanningTree:
    """Minimal spanning tree over a correlation network."""

    base: CurrencyCode
    nodes: tuple[CurrencyCode, ...]
    edges: tuple[TreeEdge, ...]

    @property
    def n(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    @property
    def total_distance(self) -> float:
        """Sum of edge distances."""
        return float(sum(e.distance for e in self.edges))

    def adjacency(self) -> dict[CurrencyCode, set[CurrencyCode]]:
        """Neighbour sets keyed by node."""
        adj: dict[CurrencyCode, set[CurrencyCode]] = {node: set() for node in self.nodes}
        for e in self.edges:
            adj[e.source].add(e.target)
            adj[e.target].add(e.source)
        return adj


class NodeMetrics(NamedTuple):
    """Per-node tree metrics."""

    degree: int
    betweenness: float


@dataclass(frozen=True)
class MetricsReport:
    """Metric bundle of one base currency over one period."""

    base: CurrencyCode
    window_id: int
    start_date: date
    end_date: date
    n_nodes: int
    per_node: dict[CurrencyCode, NodeMetrics]
    path_length: float
    clustering: float
    internode_distance: float
    lambda_max: float
    clipped: int = 0


class Window(NamedTuple):
    """Half-open date index range [start, end) of one analysis window."""

    window_id: int
    start: int
    end: int


@dataclass(frozen=True)
class WindowSpec:
    """How the sample is cut into analysis windows."""

    length_days: int
    step_days: int
    mode: Literal["sliding", "blocks"] = "sliding"
    # Inclusive (start, end) calendar ranges, used when mode == "blocks".
    block_boundaries: tuple[tuple[date, date], ...] = ()

    def __post_init__(self) -> None:
        """Validate window invariants."""
        if self.mode not in ("sliding", "blocks"):
            raise ValidationError(f"Unknown window mode {self.mode!r}", module="rolling-analysis")
        if self.mode == "sliding":
            if self.length_days < MIN_WINDOW_LENGTH:
                raise ValidationError(
                    f"Window length must be at least {MIN_WINDOW_LENGTH} days, "
                    f"got {self.length_days}",
                    module="rolling-analysis",
                )
            if self.step_days < 1:
                raise ValidationError("Window step must be positive", module="rolling-analysis")
            return
        if not self.block_boundaries:
            raise ValidationError("Block mode needs block boundaries", module="rolling-analysis")
        for start, end in self.block_boundaries:
            if end < start:
                raise ValidationError(
                    f"Block {start}..{end} ends before it starts", module="rolling-analysis"
                )
        bounds = self.block_boundaries
        for (_, prev_end), (next_start, _) in zip(bounds, bounds[1:]):
            if next_start <= prev_end:
                raise ValidationError(
                    "Blocks must be ordered and non-overlapping", module="rolling-analysis"
                )

    @property
    def overlap(self) -> float:
        """How many windows share each day: length / step for overlapping sliding windows."""
        if self.mode == "sliding" and self.step_days < self.length_days:
            return self.length_days / self.step_days
        return 1.0


@dataclass(frozen=True)
class SurvivalSeries:
    """Single-step and multi-step edge survival ratios per window shift."""

    base: CurrencyCode
    delta_values: tuple[int, ...]
    sigma: tuple[float, ...]
    Sigma: tuple[float, ...]


@dataclass(frozen=True)
class BlockSpec:
    """A group of series sharing one correlation level.

    With `hub` set, member 0 is the block factor itself and every other member
    follows it with unit beta, so corr(hub, member) = intra and
    corr(member, member) = intra**2.
    """

    size: int
    intra: float
    hub: bool = False


@dataclass(frozen=True)
class BlockModelSpec:
    """Planted correlation structure for synthetic rate panels."""

    blocks: tuple[BlockSpec, ...]
    inter_correlation: float
    T: int
    seed: int
    idiosyncratic: int = 0
    # Index of a series whose coupling to the rest decays linearly to zero.
    decoupled: int | None = None
    quote_currency: CurrencyCode = "QQQ"
    start_date: date = date(1999, 1, 4)
    daily_volatility: float = 0.006

    def __post_init__(self) -> None:
        """Validate bounds and positive semi-definiteness of the target."""
        if not self.blocks and self.idiosyncratic == 0:
            raise ValidationError("Block model has no series", module="synth-oracle")
        if self.T < 3:  # noqa: PLR2004
            raise ValidationError("Block model needs at least 3 days", module="synth-oracle")
        for block in self.blocks:
            if block.size < 1:
                raise ValidationError("Block size must be positive", module="synth-oracle")
            if not -1.0 <= block.intra <= 1.0:
                raise ValidationError(
                    f"Intra correlation {block.intra} outside [-1, 1]", module="synth-oracle"
                )
            if block.hub and block.intra <= 0:
                raise ValidationError(
                    "Hub blocks need a positive coupling", module="synth-oracle"
                )
        if not -1.0 <= self.inter_correlation <= 1.0:
            raise ValidationError(
                f"Inter correlation {self.inter_correlation} outside [-1, 1]",
                module="synth-oracle",
            )
        if self.decoupled is not None and not 0 <= self.decoupled < self.n_series:
            raise ValidationError(
                f"Decoupled series index {self.decoupled} out of range", module="synth-oracle"
            )
        smallest = float(np.linalg.eigvalsh(self.target_correlation()).min())
        if smallest < PSD_TOLERANCE:
            raise ValidationError(
                f"Target correlation matrix is not positive semi-definite "
                f"(smallest eigenvalue {smallest:.3g})",
                module="synth-oracle",
            )

    @property
    def n_series(self) -> int:
        """Number of generated series, the quote currency excluded."""
        return sum(b.size for b in self.blocks) + self.idiosyncratic

    def block_labels(self) -> list[int]:
        """Block index per series, -1 for idiosyncratic ones."""
        labels = [i for i, b in enumerate(self.blocks) for _ in range(b.size)]
        return labels + [-1] * self.idiosyncratic

    def volatilities(self) -> np.ndarray:
        """Relative volatility per series (hub followers scale by 1/intra)."""
        vols = []
        for block in self.blocks:
            vols.append(1.0)
            vols.extend([1.0 / block.intra if block.hub else 1.0] * (block.size - 1))
        vols.extend([1.0] * self.idiosyncratic)
        return np.array(vols)

    def target_correlation(self) -> np.ndarray:
        """Correlation matrix implied by the block structure."""
        labels = self.block_labels()
        n = len(labels)
        C = np.eye(n)
        offsets = np.cumsum([0] + [b.size for b in self.blocks])
        # Hub followers only see other blocks through their hub.
        loading = [
            self.blocks[b].intra if b >= 0 and self.blocks[b].hub and k != offsets[b] else 1.0
            for k, b in enumerate(labels)
        ]
        for i in range(n):
            for j in range(i + 1, n):
                bi, bj = labels[i], labels[j]
                if bi < 0 or bj < 0:
                    value = 0.0
                elif bi != bj:
                    value = self.inter_correlation * loading[i] * loading[j]
                else:
                    block = self.blocks[bi]
                    if block.hub:
                        touches_hub = offsets[bi] in (i, j)
                        value = block.intra if touches_hub else block.intra**2
                    else:
                        value = block.intra
                C[i, j] = C[j, i] = value
        return C
