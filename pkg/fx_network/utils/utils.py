"""Utility functions module."""

import hashlib
import sys
from pathlib import Path
from typing import Literal

from loguru import logger

from fx_network.settings import settings


class Utils:
    """Utility class."""

    def __init__(self) -> None:
        """Route loguru output to stderr so stdout stays clean for data."""
        self._configured_debug: bool | None = None

    def _configure(self) -> None:
        if self._configured_debug == settings.debug:
            return
        logger.remove()
        logger.add(sys.stderr, level="DEBUG" if settings.debug else "INFO")
        self._configured_debug = settings.debug

    def log(self, msg: str, level: Literal["INFO", "DEBUG", "WARN"] = "DEBUG") -> None:
        """Log a message at the specified level.

        Args:
            msg: Message to log.
            level:  Log level (INFO, DEBUG, WARN). DEBUG messages only show
                    when debug mode is enabled in settings.

        """
        self._configure()
        if settings.debug and level == "DEBUG":
            logger.debug(msg)
        elif level == "INFO":
            logger.info(msg)
        elif level == "WARN":
            logger.warning(msg)

    def sha256_bytes(self, data: bytes, /) -> str:
        """Hex digest of a byte string."""
        return hashlib.sha256(data).hexdigest()

    def sha256_file(self, path: Path, /) -> str:
        """Hex digest of a file's contents."""
        return self.sha256_bytes(path.read_bytes())

    def list_files(self, path: Path, file_suffix: str | list[str]) -> list[Path]:
        """Do a sorted glob search of files using file type.

        Args:
            path: Directory path to search in.
            file_suffix: File suffix(es) to match (e.g., '.csv', ['.csv', '.txt']).

        Returns:
            List of matching file paths.

        """
        if isinstance(file_suffix, str):
            file_suffix = [file_suffix]
        return sorted(p for suffix in file_suffix for p in path.rglob(f"*{suffix}"))


utils = Utils()
