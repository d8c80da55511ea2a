"""End-to-end properties on random and synthetic inputs."""

from datetime import date
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from helpers import network_from_R, node_names, random_distances, random_tree
from typer.testing import CliRunner

from fx_network.cli.main import app
from fx_network.data.panel import cross_rates, requote
from fx_network.data_models import BlockModelSpec, BlockSpec, RatePanel, WindowSpec
from fx_network.evolution import analyze_window, linear_trend, rolling_snapshots, survival_curves
from fx_network.graph import build_mst
from fx_network.graph.correlation import correlation_from_distance, correlation_matrix, distance
from fx_network.metrics import betweenness_all, weighted_clustering_from_weights
from fx_network.returns import build_return_matrix
from fx_network.synth import (
    betweenness_oracle,
    clustering_oracle,
    generate_panel,
    mst_oracle,
    write_panel,
)

SEEDS = range(20)


class TestSpanningTreeOracle:
    """Kruskal against exhaustive enumeration of labeled trees."""

    def test_hundred_matrices(self) -> None:
        """Test that the spanning tree total matches the enumerated minimum."""
        rng = np.random.default_rng(2024)
        for k in range(100):
            n = 4 + k % 4
            D = random_distances(n, rng)
            R = np.vectorize(correlation_from_distance)(D)
            tree = build_mst(network_from_R(R))
            assert tree.total_distance == pytest.approx(mst_oracle(D), abs=1e-12)


class TestBetweennessOracle:
    """Subtree-size betweenness against explicit path walks."""

    def test_hundred_trees(self) -> None:
        """Test every node of 100 random trees for exact agreement."""
        rng = np.random.default_rng(7)
        for k in range(100):
            tree = random_tree(5 + k % 8, rng)
            fast = betweenness_all(tree)
            for x in tree.nodes:
                assert abs(fast[x] - betweenness_oracle(tree, x)) < 1e-15


class TestClusteringOracle:
    """Matrix clustering against triple enumeration."""

    def test_fifty_networks(self) -> None:
        """Test agreement and invariance under uniform weight scaling."""
        rng = np.random.default_rng(99)
        for k in range(50):
            n = 3 + k % 8
            upper = np.triu(rng.uniform(0.0, 1.0, (n, n)), k=1)
            W = upper + upper.T
            names = node_names(n)
            fast, mean = weighted_clustering_from_weights(names, W)
            slow, slow_mean = clustering_oracle(names, W)
            for x in names:
                assert fast[x] == pytest.approx(slow[x], abs=1e-12)
            assert mean == pytest.approx(slow_mean, abs=1e-12)
            for factor in (0.5, 2.0, 10.0):
                _, scaled = weighted_clustering_from_weights(names, factor * W)
                assert scaled == pytest.approx(mean, abs=1e-12)


class TestDistanceCalibration:
    """Landmark distances and the correlation round trip."""

    def test_landmarks(self) -> None:
        """Test d(1) = 0, d(0) = sqrt 2 and d(-1) = 2."""
        assert abs(distance(1.0)) <= 1e-15
        assert abs(distance(0.0) - np.sqrt(2.0)) <= 1e-15
        assert abs(distance(-1.0) - 2.0) <= 1e-15

    def test_round_trip(self) -> None:
        """Test r -> d -> r on a 1001-point grid."""
        for r in np.linspace(-1.0, 1.0, 1001):
            assert abs(correlation_from_distance(distance(r)) - r) <= 1e-12


class TestCorrelationContract:
    """Structural properties of R on generated panels."""

    @pytest.mark.parametrize("seed", range(5))
    def test_generated_panels(self, seed: int) -> None:
        """Test symmetry, unit diagonal, positive semi-definiteness and trace."""
        spec = BlockModelSpec(
            blocks=(BlockSpec(5, 0.7), BlockSpec(4, 0.4, hub=True)),
            inter_correlation=0.15,
            T=250,
            seed=seed,
            idiosyncratic=2,
        )
        panel = generate_panel(spec)
        for base in ("AAA", "AAF", "QQQ"):
            net = correlation_matrix(build_return_matrix(cross_rates(panel, base)))
            np.testing.assert_array_equal(net.R, net.R.T)
            np.testing.assert_allclose(np.diag(net.R), 1.0, atol=1e-10)
            assert np.linalg.eigvalsh(net.R).min() >= -1e-8
            assert np.trace(net.R) == pytest.approx(net.n, abs=1e-8)


class TestSurvivalOrdering:
    """Multi-step survival never exceeds single-step survival."""

    def test_twenty_runs(self) -> None:
        """Test ordering and monotone decay of averaged survival curves."""
        spec_window = WindowSpec(length_days=60, step_days=20)
        for seed in SEEDS:
            spec = BlockModelSpec(
                blocks=(BlockSpec(4, 0.6), BlockSpec(4, 0.3)),
                inter_correlation=0.1,
                T=400,
                seed=seed,
            )
            snapshots = rolling_snapshots(generate_panel(spec), "QQQ", spec_window)
            curves = survival_curves([s.tree for s in snapshots], 6)
            for sigma, multi in zip(curves.sigma, curves.Sigma):
                assert multi <= sigma + 1e-12
            assert all(b <= a + 1e-12 for a, b in zip(curves.Sigma, curves.Sigma[1:]))


def _hub_market(seed: int) -> BlockModelSpec:
    """19 series following one hub at 0.8, one independent series, and the quote."""
    return BlockModelSpec(
        blocks=(BlockSpec(19, 0.8, hub=True),),
        inter_correlation=0.0,
        T=2000,
        seed=seed,
        idiosyncratic=1,
    )


class TestBaseDependence:
    """An independent base sees more structure than a hub base."""

    def test_idiosyncratic_base_clusters_more(self) -> None:
        """Test clustering and path length on twenty seeds of a hub market."""
        passed = 0
        for seed in SEEDS:
            panel = generate_panel(_hub_market(seed))
            hub = analyze_window(panel, "AAA").report
            independent = analyze_window(panel, "AAT").report
            assert hub.n_nodes == independent.n_nodes == 20
            if (
                independent.clustering > hub.clustering
                and hub.path_length > independent.path_length
            ):
                passed += 1
        assert passed >= 19


class TestTrendDetection:
    """Rolling internode distance picks up a planted decoupling."""

    @staticmethod
    def _distance_trend(  # noqa: ANN205
        spec: BlockModelSpec, windows: WindowSpec, overlap: float = 1.0
    ):
        snapshots = rolling_snapshots(generate_panel(spec), "QQQ", windows)
        return linear_trend([s.report.internode_distance for s in snapshots], overlap=overlap)

    def test_planted_decoupling(self) -> None:
        """Test that a fading series gives a rising trend at least 3 standard errors out."""
        windows = WindowSpec(length_days=126, step_days=63)
        for seed in SEEDS:
            spec = BlockModelSpec(
                blocks=(BlockSpec(6, 0.7),), inter_correlation=0.0, T=2000, seed=seed, decoupled=0
            )
            fit = self._distance_trend(spec, windows)
            assert fit.slope > 0
            assert fit.t_value >= 3.0

    @pytest.mark.parametrize(("step", "min_flat"), [(126, 18), (21, 16)])
    def test_stationary(self, step: int, min_flat: int) -> None:
        """Test that a stationary market shows no trend beyond 2 standard errors."""
        windows = WindowSpec(length_days=126, step_days=step)
        flat = 0
        for seed in SEEDS:
            spec = BlockModelSpec(
                blocks=(BlockSpec(6, 0.7),), inter_correlation=0.0, T=2000, seed=seed
            )
            fit = self._distance_trend(spec, windows, windows.overlap)
            if abs(fit.t_value) <= 2.0:
                flat += 1
        assert flat >= min_flat


class TestBlockSubintervals:
    """Block mode through the command line on a long synthetic panel."""

    RANGES = (
        (date(1999, 1, 4), date(2000, 12, 29)),
        (date(2001, 1, 2), date(2002, 12, 31)),
        (date(2003, 1, 2), date(2004, 12, 31)),
        (date(2005, 1, 3), date(2006, 8, 31)),
        (date(2006, 9, 1), date(2008, 12, 31)),
    )

    def test_five_blocks(self, tmp_path: Path) -> None:
        """Test five reports whose date ranges match the requested blocks."""
        spec = BlockModelSpec(
            blocks=(BlockSpec(4, 0.6), BlockSpec(3, 0.3)), inter_correlation=0.1, T=2394, seed=1
        )
        panel_path = write_panel(spec, tmp_path / "long.csv")
        panel = generate_panel(spec)
        blocks = ",".join(f"{a.isoformat()}:{b.isoformat()}" for a, b in self.RANGES)
        out = tmp_path / "out"
        result = CliRunner().invoke(
            app,
            [
                "evolve",
                str(panel_path),
                "--quote",
                "QQQ",
                "--base",
                "QQQ",
                "--blocks",
                blocks,
                "--output",
                str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        metrics = pd.read_csv(out / "QQQ" / "evolve" / "metrics.csv")
        assert len(metrics) == 5
        for row, (first, last) in zip(metrics.itertuples(), self.RANGES):
            inside = [d for d in panel.dates if first <= d <= last]
            assert row.start_date == inside[0].isoformat()
            assert row.end_date == inside[-1].isoformat()
        last_block = [d for d in panel.dates if d >= self.RANGES[-1][0]]
        assert 350 < len(last_block) < 420


class TestQuoteInvariance:
    """Re-denominating the panel leaves every metric unchanged."""

    def test_requoted_panel(self, block_panel: RatePanel) -> None:
        """Test every base's metrics before and after switching the quote currency."""
        other = requote(block_panel, "AAD")
        for base in block_panel.currencies:
            before = analyze_window(block_panel, base)
            after = analyze_window(other, base)
            np.testing.assert_allclose(after.network.R, before.network.R, atol=1e-10)
            a, b = before.report, after.report
            for field in ("path_length", "clustering", "internode_distance", "lambda_max"):
                assert getattr(b, field) == pytest.approx(getattr(a, field), abs=1e-10)
            assert b.per_node.keys() == a.per_node.keys()
            for node, metrics in a.per_node.items():
                assert b.per_node[node].degree == metrics.degree
                assert b.per_node[node].betweenness == pytest.approx(
                    metrics.betweenness, abs=1e-10
                )
