"""Pytest configuration script."""

import os
from pathlib import Path

import pytest

from fx_network.data.panel import serialize_panel
from fx_network.data_models import BlockModelSpec, BlockSpec, RatePanel
from fx_network.settings import settings
from fx_network.synth.generator import generate_panel


@pytest.fixture(scope="session", autouse=True)
def isolated_settings(tmp_path_factory: pytest.TempPathFactory):  # noqa: ANN201
    """Point cache and output directories at temporary folders.

    Happens once per testing session.
    """
    root = tmp_path_factory.mktemp("fx_network")
    os.environ["FX_NETWORK_CACHE_PATH"] = str(root / "cache")
    os.environ["FX_NETWORK_OUTPUT_DIR"] = str(root / "output")
    settings.use_config(None)
    assert settings.cache_path == root / "cache"
    yield root
    del os.environ["FX_NETWORK_CACHE_PATH"]
    del os.environ["FX_NETWORK_OUTPUT_DIR"]


@pytest.fixture
def block_spec() -> BlockModelSpec:
    """Two planted blocks, 8 series plus the quote currency."""
    return BlockModelSpec(
        blocks=(BlockSpec(size=4, intra=0.7), BlockSpec(size=4, intra=0.5)),
        inter_correlation=0.2,
        T=300,
        seed=7,
    )


@pytest.fixture
def block_panel(block_spec: BlockModelSpec) -> RatePanel:
    """Synthetic panel of 9 currencies over 300 business days."""
    return generate_panel(block_spec)


@pytest.fixture
def panel_csv(tmp_path: Path, block_panel: RatePanel) -> Path:
    """The block panel written in the ingest schema."""
    path = tmp_path / "panel.csv"
    path.write_text(serialize_panel(block_panel))
    return path
