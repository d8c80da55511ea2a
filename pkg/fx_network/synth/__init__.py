"""Synthetic panels and brute-force oracles."""

from fx_network.synth.generator import (
    generate_panel,
    generate_returns,
    series_codes,
    spec_from_mapping,
    write_panel,
)
from fx_network.synth.oracles import (
    betweenness_oracle,
    clustering_oracle,
    mst_oracle,
    path_length_oracle,
    prufer_to_edges,
)

__all__ = [
    "betweenness_oracle",
    "clustering_oracle",
    "generate_panel",
    "generate_returns",
    "mst_oracle",
    "path_length_oracle",
    "prufer_to_edges",
    "series_codes",
    "spec_from_mapping",
    "write_panel",
]
