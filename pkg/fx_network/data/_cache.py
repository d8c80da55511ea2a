"""Per-currency download cache."""

import shutil
import threading
from functools import cached_property
from pathlib import Path

from fx_network.settings import settings
from fx_network.utils import utils


class _FileCache:
    """Cache holder for one raw currency file."""

    def __init__(self, path: Path, /) -> None:
        """Initialize cache holder with file path.

        Args:
            path: Path to the cache file.

        """
        self.path = path

    def exists(self) -> bool:
        """Check if cache file exists and is non-empty."""
        return self.path.exists() and self.path.stat().st_size > 0

    def read(self) -> str:
        """Read the cached file, empty string when absent."""
        if not self.path.exists():
            return ""
        return self.path.read_text(encoding="utf-8")

    def write(self, data: str, /) -> None:
        """Write through a temporary file so readers never see partial content."""
        tmp = self.path.with_suffix(self.path.suffix + ".part")
        tmp.write_text(data, encoding="utf-8")
        tmp.replace(self.path)

    def clear(self) -> None:
        """Delete the cache."""
        self.path.unlink(missing_ok=True)


class Cache:
    """Directory of `<CODE>.csv` raw files, one per currency."""

    def __init__(self, path: Path | None = None) -> None:
        """Initialize the cache, defaulting to the configured cache path."""
        self._path = path
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    @cached_property
    def cache_path(self) -> Path:
        """Cache directory, created on first use."""
        p = self._path or settings.cache_path
        p.mkdir(parents=True, exist_ok=True)
        return p

    def get_currency_cache(self, code: str, /) -> _FileCache:
        """Cache handler for one currency's raw file."""
        return _FileCache(self.cache_path / f"{code}.csv")

    def lock_for(self, code: str, /) -> threading.Lock:
        """Lock serializing writes to one currency's file."""
        with self._locks_guard:
            return self._locks.setdefault(code, threading.Lock())

    def cached_codes(self) -> list[str]:
        """Currencies with a cached file."""
        return [p.stem for p in utils.list_files(self.cache_path, ".csv")]

    def clear(self) -> None:
        """Clear the cache."""
        shutil.rmtree(self.cache_path, ignore_errors=True)
        self.cache_path.mkdir(parents=True)
        utils.log(f"Cleared cache at {self.cache_path}")
