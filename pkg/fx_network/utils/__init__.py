"""Shared helpers."""

from fx_network.utils.utils import utils

__all__ = ["utils"]
