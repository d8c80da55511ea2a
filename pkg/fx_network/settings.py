"""Settings module."""

import os
from datetime import date
from functools import cached_property
from pathlib import Path
from typing import Any, NamedTuple

import tomli

from fx_network.constants import (
    DEFAULT_CLIP_SIGMA,
    DEFAULT_MAX_GAP,
    DEFAULT_MAX_MISSING_FRAC,
    DEFAULT_QUOTE,
    DEFAULT_WINDOW_LENGTH,
    DEFAULT_WINDOW_STEP,
    ENV_PREFIX,
)
from fx_network.errors import ConfigError


class Setting(NamedTuple):
    """Information about where a setting value came from."""

    value: Any
    source: str
    location: str | None = None


def _read_toml(path: Path, /) -> dict:
    """Read a TOML file and return the fx_network table.

    A pyproject.toml keeps its settings under [tool.fx_network], a standalone
    config file may put them at the top level.

    Args:
        path: Path to the TOML file.

    Returns:
        Dictionary of fx_network settings.

    Raises:
        ConfigError: If the file cannot be read or parsed.

    """
    try:
        parsed = tomli.loads(path.read_text())
    except (OSError, tomli.TOMLDecodeError) as e:
        raise ConfigError(f"Cannot read config file {path}: {e}", module="settings") from e
    if "tool" in parsed:
        return parsed["tool"].get("fx_network", {})
    return parsed


def _find_toml_settings(filename: str = "pyproject.toml") -> tuple[dict, Path | None]:
    """Find and load fx_network settings from the nearest pyproject.toml.

    Args:
        filename: Name of the TOML file to search for.

    Returns:
        Tuple of (dictionary of fx_network settings, path to toml file).

    """
    current = Path.cwd()
    for parent in [current, *list(current.parents)]:
        p = parent / filename
        if p.exists():
            try:
                return _read_toml(p), p
            except ConfigError:
                return {}, None
    return {}, None


def _get_env_var(name: str) -> str | None:
    """Get environment variable with the FX_NETWORK_ naming convention."""
    return os.environ.get(f"{ENV_PREFIX}{name}".upper())


def _parse_date(value: Any) -> date:  # noqa: ANN401
    if isinstance(value, date):
        return value
    try:
        return date.fromisoformat(str(value))
    except ValueError as e:
        raise ConfigError(f"Invalid date in block boundaries: {value!r}", module="settings") from e


class Settings:
    """Collection of settings class."""

    def __init__(self, config_path: Path | None = None) -> None:
        """Initialize settings, optionally pinned to an explicit config file."""
        self._config_path = config_path

    def use_config(self, path: Path | None, /) -> None:
        """Switch the TOML source and drop every cached value.

        Args:
            path: Config file to read, or None to fall back to pyproject.toml.

        """
        if path is not None and not path.exists():
            raise ConfigError(f"Config file not found: {path}", module="settings")
        self._config_path = path
        for key in list(self.__dict__):
            if key != "_config_path":
                del self.__dict__[key]

    @cached_property
    def _toml(self) -> tuple[dict, Path | None]:
        explicit = self._config_path
        if explicit is None and _get_env_var("config"):
            explicit = Path(_get_env_var("config"))  # type: ignore
        if explicit is not None:
            return _read_toml(explicit), explicit
        return _find_toml_settings()

    def _get_setting(self, name: str, default: Any = None, /) -> Setting:  # noqa: ANN401
        """Get setting value with source tracking and precedence: env var > toml > default.

        Args:
            name: Setting name.
            default: Default value if setting not found.

        Returns:
            Setting with value, source type, and location info.

        """
        env_setting = _get_env_var(name)
        if env_setting:
            return Setting(
                value=env_setting,
                source="environment variable",
                location=f"{ENV_PREFIX}{name}".upper(),
            )

        toml, toml_path = self._toml
        toml_setting = toml.get(name)
        if toml_setting is not None:
            return Setting(
                value=toml_setting,
                source="TOML file",
                location=str(toml_path) if toml_path else "pyproject.toml",
            )

        return Setting(value=default, source="default", location=None)

    def _get_bool_setting(self, name: str, default: str, /) -> Setting:
        source = self._get_setting(name, default)
        bool_value = str(source.value).lower() == "true"
        return Setting(value=bool_value, source=source.source, location=source.location)

    def _get_typed_setting(
        self,
        name: str,
        default: Any,  # noqa: ANN401
        cast: type,
        /,
    ) -> Setting:
        source = self._get_setting(name, default)
        try:
            value = cast(source.value)
        except (TypeError, ValueError) as e:
            raise ConfigError(
                f"Setting '{name}' from {source.source} is not a valid {cast.__name__}: "
                f"{source.value!r}",
                module="settings",
            ) from e
        return Setting(value=value, source=source.source, location=source.location)

    @cached_property
    def _debug(self) -> Setting:
        return self._get_bool_setting("debug", "false")

    @cached_property
    def debug(self) -> bool:
        """Debug flag."""
        return self._debug.value

    @cached_property
    def _cache_path(self) -> Setting:
        return self._get_setting("cache_path", ".fx_network_cache")

    @cached_property
    def cache_path(self) -> Path:
        """Directory holding one downloaded raw file per currency."""
        return Path(self._cache_path.value)

    @cached_property
    def _output_dir(self) -> Setting:
        return self._get_setting("output_dir", "fx_network_output")

    @cached_property
    def output_dir(self) -> Path:
        """Root directory for artifacts."""
        return Path(self._output_dir.value)

    @cached_property
    def _quote_currency(self) -> Setting:
        return self._get_setting("quote_currency", DEFAULT_QUOTE)

    @cached_property
    def quote_currency(self) -> str:
        """Quote currency of input panels."""
        return str(self._quote_currency.value).upper()

    @cached_property
    def _clip_sigma(self) -> Setting:
        return self._get_typed_setting("clip_sigma", DEFAULT_CLIP_SIGMA, float)

    @cached_property
    def clip_sigma(self) -> float:
        """Threshold (in standard deviations) for extreme return replacement."""
        return self._clip_sigma.value

    @cached_property
    def _window_length(self) -> Setting:
        return self._get_typed_setting("window_length", DEFAULT_WINDOW_LENGTH, int)

    @cached_property
    def window_length(self) -> int:
        """Moving window length in trading days."""
        return self._window_length.value

    @cached_property
    def _window_step(self) -> Setting:
        return self._get_typed_setting("window_step", DEFAULT_WINDOW_STEP, int)

    @cached_property
    def window_step(self) -> int:
        """Moving window step in trading days."""
        return self._window_step.value

    @cached_property
    def _max_gap(self) -> Setting:
        return self._get_typed_setting("max_gap", DEFAULT_MAX_GAP, int)

    @cached_property
    def max_gap(self) -> int:
        """Longest run of missing days that is forward-filled."""
        return self._max_gap.value

    @cached_property
    def _max_missing_frac(self) -> Setting:
        return self._get_typed_setting("max_missing_frac", DEFAULT_MAX_MISSING_FRAC, float)

    @cached_property
    def max_missing_frac(self) -> float:
        """Currencies missing more than this fraction of dates are rejected."""
        return self._max_missing_frac.value

    @cached_property
    def _fetch_retries(self) -> Setting:
        return self._get_typed_setting("fetch_retries", 3, int)

    @cached_property
    def fetch_retries(self) -> int:
        """Download attempts per currency before giving up."""
        return self._fetch_retries.value

    @cached_property
    def _fetch_timeout(self) -> Setting:
        return self._get_typed_setting("fetch_timeout", 30.0, float)

    @cached_property
    def fetch_timeout(self) -> float:
        """HTTP timeout in seconds."""
        return self._fetch_timeout.value

    @cached_property
    def _workers(self) -> Setting:
        return self._get_typed_setting("workers", 1, int)

    @cached_property
    def workers(self) -> int:
        """Thread count used for bases and windows."""
        return max(1, self._workers.value)

    @cached_property
    def _blocks(self) -> Setting:
        return self._get_setting("blocks", [])

    @cached_property
    def blocks(self) -> list[tuple[date, date]]:
        """Explicit block boundaries, inclusive on both ends."""
        raw = self._blocks.value or []
        if isinstance(raw, str):
            raise ConfigError("'blocks' can only be set in a TOML file", module="settings")
        return [(_parse_date(start), _parse_date(end)) for start, end in raw]

    @cached_property
    def _synth(self) -> Setting:
        return self._get_setting("synth", {})

    @cached_property
    def synth(self) -> dict:
        """Raw BlockModelSpec table for the synth command."""
        return dict(self._synth.value or {})

    def get_all_settings_with_sources(self) -> dict[str, Setting]:
        """Get all settings with their source information.

        Returns:
            Dictionary mapping setting names to Setting objects.

        """
        return {
            setting: getattr(self, f"_{setting}")
            for setting in [
                "debug",
                "cache_path",
                "output_dir",
                "quote_currency",
                "clip_sigma",
                "window_length",
                "window_step",
                "max_gap",
                "max_missing_frac",
                "fetch_retries",
                "fetch_timeout",
                "workers",
                "blocks",
            ]
        }


settings = Settings()
