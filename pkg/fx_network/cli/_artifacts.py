"""Staged artifact writing with a reproducibility manifest."""

import json
import shutil
import tempfile
import threading
from collections.abc import Callable
from pathlib import Path
from types import TracebackType

import pandas as pd

from fx_network.cli._config import RunConfig
from fx_network.constants import FLOAT_FORMAT
from fx_network.utils import utils


class ArtifactWriter:
    """Collect a run's files in a staging directory and publish them together.

    Files land at `<output>/<base>/<command>/<name>` only when the run
    finishes without error; a failed run leaves the output directory as it was.
    Writes from worker threads are serialized.
    """

    def __init__(self, config: RunConfig) -> None:
        """Initialize the writer for one run."""
        self.config = config
        self.output_dir = config.output_dir
        self._lock = threading.Lock()
        self._staging: Path | None = None
        self._artifacts: list[Path] = []

    def __enter__(self) -> "ArtifactWriter":
        """Create the staging directory."""
        self._staging = Path(tempfile.mkdtemp(prefix=".fx_network_staging_"))
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        """Publish on success, discard on failure."""
        staging = self._staging
        try:
            if exc_type is None:
                self._commit()
        finally:
            if staging is not None:
                shutil.rmtree(staging, ignore_errors=True)
            self._staging = None

    def relative(self, base: str, name: str) -> Path:
        """Artifact path relative to the output directory."""
        return Path(base) / self.config.command / name

    def _staged(self, relative: Path) -> Path:
        if self._staging is None:
            msg = "ArtifactWriter used outside its context"
            raise RuntimeError(msg)
        path = self._staging / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_text(self, base: str, name: str, text: str) -> Path:
        """Stage a text artifact."""
        relative = self.relative(base, name)
        with self._lock:
            self._staged(relative).write_text(text, encoding="utf-8", newline="\n")
            self._artifacts.append(relative)
        return relative

    def write_with(self, base: str, name: str, writer: Callable[[Path], object]) -> Path:
        """Stage an artifact produced by a function that writes to a path."""
        relative = self.relative(base, name)
        with self._lock:
            writer(self._staged(relative))
            self._artifacts.append(relative)
        return relative

    def manifest(self) -> dict:
        """Config hash, input hashes and artifact hashes; no timestamps."""
        assert self._staging is not None
        inputs = {str(p): utils.sha256_file(p) for p in sorted(self.config.inputs)}
        return {
            "command": self.config.command,
            "config": json.loads(self.config.to_json()),
            "config_hash": self.config.config_hash(),
            "inputs": inputs,
            "artifacts": {
                rel.as_posix(): utils.sha256_file(self._staging / rel)
                for rel in sorted(set(self._artifacts))
            },
        }

    @property
    def manifest_name(self) -> str:
        """File name of the run manifest inside the output directory."""
        return f"manifest_{self.config.command}.json"

    def _commit(self) -> None:
        assert self._staging is not None
        manifest = json.dumps(self.manifest(), indent=2, sort_keys=True) + "\n"
        self.output_dir.mkdir(parents=True, exist_ok=True)
        for rel in sorted(set(self._artifacts)):
            target = self.output_dir / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            shutil.move(str(self._staging / rel), str(target))
        (self.output_dir / self.manifest_name).write_text(manifest, encoding="utf-8")
        utils.log(
            f"Wrote {len(set(self._artifacts))} artifacts to {self.output_dir}", level="INFO"
        )


def frame_to_csv(frame: pd.DataFrame, /) -> str:
    """CSV text without index at full float precision."""
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
