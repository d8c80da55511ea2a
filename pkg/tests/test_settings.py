"""Tests for layered settings."""

from datetime import date
from pathlib import Path

import pytest

from fx_network.constants import DEFAULT_CLIP_SIGMA, DEFAULT_WINDOW_LENGTH
from fx_network.errors import ConfigError
from fx_network.settings import Settings


def _config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "fx.toml"
    path.write_text(text)
    return path


class TestSettings:
    """Test precedence, parsing and source tracking."""

    def test_defaults(self, tmp_path: Path) -> None:
        """Test that an empty config file falls back to defaults."""
        s = Settings(_config(tmp_path, ""))
        assert s.clip_sigma == DEFAULT_CLIP_SIGMA
        assert s.window_length == DEFAULT_WINDOW_LENGTH
        assert s._clip_sigma.source == "default"
        assert s.blocks == []
        assert s.synth == {}

    def test_toml_values(self, tmp_path: Path) -> None:
        """Test values and their location from a [tool.fx_network] table."""
        path = _config(tmp_path, '[tool.fx_network]\nclip_sigma = 5.0\nquote_currency = "eur"\n')
        s = Settings(path)
        assert s.clip_sigma == 5.0
        assert s.quote_currency == "EUR"
        assert s._clip_sigma.source == "TOML file"
        assert s._clip_sigma.location == str(path)

    def test_top_level_table(self, tmp_path: Path) -> None:
        """Test that a standalone file may hold settings at the top level."""
        s = Settings(_config(tmp_path, "window_step = 5\n"))
        assert s.window_step == 5

    def test_env_beats_toml(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that environment variables take precedence over the config file."""
        monkeypatch.setenv("FX_NETWORK_CLIP_SIGMA", "7.5")
        s = Settings(_config(tmp_path, "clip_sigma = 5.0\n"))
        assert s.clip_sigma == 7.5
        assert s._clip_sigma.source == "environment variable"
        assert s._clip_sigma.location == "FX_NETWORK_CLIP_SIGMA"

    def test_blocks_and_synth(self, tmp_path: Path) -> None:
        """Test block boundaries and the synth table."""
        text = (
            'blocks = [["2001-01-01", "2001-12-31"], [2002-01-01, 2002-06-30]]\n'
            "[synth]\nT = 500\nseed = 4\n"
        )
        s = Settings(_config(tmp_path, text))
        assert s.blocks == [
            (date(2001, 1, 1), date(2001, 12, 31)),
            (date(2002, 1, 1), date(2002, 6, 30)),
        ]
        assert s.synth == {"T": 500, "seed": 4}

    def test_invalid_value(self, tmp_path: Path) -> None:
        """Test that a value of the wrong type is a config error."""
        s = Settings(_config(tmp_path, 'window_length = "long"\n'))
        with pytest.raises(ConfigError, match="window_length"):
            _ = s.window_length

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Test that a broken config file is a config error."""
        s = Settings(_config(tmp_path, "clip_sigma = = 3\n"))
        with pytest.raises(ConfigError):
            _ = s.clip_sigma

    def test_use_config(self, tmp_path: Path) -> None:
        """Test that switching the config file drops cached values."""
        s = Settings(_config(tmp_path, "max_gap = 2\n"))
        assert s.max_gap == 2
        other = tmp_path / "other.toml"
        other.write_text("max_gap = 5\n")
        s.use_config(other)
        assert s.max_gap == 5
        with pytest.raises(ConfigError):
            s.use_config(tmp_path / "missing.toml")

    def test_all_settings_with_sources(self, tmp_path: Path) -> None:
        """Test the listing behind the settings command."""
        sources = Settings(_config(tmp_path, "")).get_all_settings_with_sources()
        assert {"debug", "cache_path", "clip_sigma", "workers", "blocks"} <= set(sources)
        assert sources["cache_path"].source == "environment variable"
