"""Exception hierarchy shared by every pipeline stage."""


class FxNetworkError(Exception):
    """Base exception, tagged with the module that raised it.

    Attributes:
        module: Name of the pipeline stage (e.g. "data-ingest").
        context: Optional currency code or window id the failure relates to.
        exit_code: Process exit status used by the CLI.

    """

    exit_code = 1

    def __init__(self, message: str, *, module: str, context: str | None = None) -> None:
        """Initialize the error with its originating module."""
        super().__init__(message)
        self.message = message
        self.module = module
        self.context = context

    def with_context(self, context: str, /) -> "FxNetworkError":
        """Annotate the error with an outer context such as a window id."""
        self.context = f"{context}: {self.context}" if self.context else context
        return self

    def __str__(self) -> str:
        """Render as '[module] (context) message'."""
        where = f" ({self.context})" if self.context else ""
        return f"[{self.module}]{where} {self.message}"


class PanelParseError(FxNetworkError):
    """Malformed input file; carries the offending line number."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        module: str = "data-ingest",
    ) -> None:
        """Initialize with an optional 1-based line number."""
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message, module=module)


class ValidationError(FxNetworkError):
    """Input violates a documented invariant."""

    exit_code = 2


class NotFoundError(FxNetworkError):
    """Requested currency or node does not exist."""

    exit_code = 2


class SizeError(FxNetworkError):
    """Input too small or too large for the requested operation."""

    exit_code = 2


class ConfigError(FxNetworkError):
    """Invalid configuration."""

    exit_code = 2


class DomainError(FxNetworkError):
    """Value outside the mathematical domain of an operation."""


class DegenerateSeriesError(FxNetworkError):
    """A return series has zero variance and cannot be normalized."""

    def __init__(self, message: str, *, module: str, currency: str | None = None) -> None:
        """Initialize with the currency whose series degenerated."""
        self.currency = currency
        super().__init__(message, module=module, context=currency)


class NumericError(FxNetworkError):
    """Iterative method failed to converge."""


class FetchError(FxNetworkError):
    """Downloads failed for one or more currencies.

    Attributes:
        failures: Mapping of currency code to failure reason.

    """

    def __init__(self, message: str, *, failures: dict[str, str]) -> None:
        """Initialize with per-currency failures."""
        self.failures = failures
        super().__init__(message, module="data-ingest", context=", ".join(sorted(failures)))
