"""Tests for the correlation network, distances and the dominant eigenvalue."""

from unittest.mock import patch

import numpy as np
import pytest
from helpers import random_correlation
from scipy.linalg import block_diag
from scipy.sparse.linalg import ArpackNoConvergence

from fx_network.constants import SQRT2
from fx_network.data.panel import cross_rates
from fx_network.data_models import RatePanel, ReturnMatrix
from fx_network.errors import DomainError, NumericError, SizeError
from fx_network.graph.correlation import (
    correlation_from_distance,
    correlation_matrix,
    distance,
    distance_matrix,
    export_matrix,
    largest_eigenvalue,
)
from fx_network.returns import build_return_matrix


def _matrix(rows: list[list[float]]) -> ReturnMatrix:
    codes = ("AAA", "BBB", "CCC", "DDD")[: len(rows)]
    return ReturnMatrix(base="EUR", price_currencies=codes, values=np.array(rows, dtype=float))


class TestDistance:
    """Test the correlation to distance mapping."""

    @pytest.mark.parametrize(
        ("r", "expected"), [(1.0, 0.0), (0.0, SQRT2), (-1.0, 2.0), (0.5, 1.0)]
    )
    def test_calibration(self, r: float, expected: float) -> None:
        """Test the distance at landmark correlations."""
        assert distance(r) == pytest.approx(expected, abs=1e-15)

    def test_inverse(self) -> None:
        """Test that correlation_from_distance undoes distance."""
        for r in np.linspace(-1, 1, 41):
            assert correlation_from_distance(distance(r)) == pytest.approx(r, abs=1e-12)

    def test_monotone_decreasing(self) -> None:
        """Test that stronger correlation means shorter distance."""
        values = [distance(r) for r in np.linspace(-1, 1, 21)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_out_of_domain(self) -> None:
        """Test that |r| > 1 and d outside [0, 2] are domain errors."""
        with pytest.raises(DomainError):
            distance(1.5)
        with pytest.raises(DomainError):
            correlation_from_distance(2.5)
        with pytest.raises(DomainError):
            correlation_from_distance(-0.1)

    def test_rounding_noise_clamped(self) -> None:
        """Test that r slightly above 1 from rounding gives distance 0."""
        assert distance(1.0 + 1e-12) == 0.0

    def test_matrix_triangle_inequality(self) -> None:
        """Test that distances of a correlation matrix form a metric."""
        D = distance_matrix(random_correlation(8, np.random.default_rng(2)))
        assert np.all(np.diag(D) == 0)
        for i in range(8):
            for j in range(8):
                assert np.all(D[i, j] <= D[i, :] + D[:, j] + 1e-12)


class TestCorrelationMatrix:
    """Test R = M M^T / T."""

    def test_identical_negated_orthogonal(self) -> None:
        """Test the three canonical row relations."""
        net = correlation_matrix(
            _matrix([[1, -1, 1, -1], [1, -1, 1, -1], [-1, 1, -1, 1], [1, 1, -1, -1]])
        )
        assert net.R[0, 1] == pytest.approx(1.0)
        assert net.distances[0, 1] == pytest.approx(0.0)
        assert net.R[0, 2] == pytest.approx(-1.0)
        assert net.distances[0, 2] == pytest.approx(2.0)
        assert net.weights[0, 2] == pytest.approx(1.0)
        assert net.R[0, 3] == pytest.approx(0.0)
        assert net.distances[0, 3] == pytest.approx(SQRT2)

    def test_properties(self, block_panel: RatePanel) -> None:
        """Test symmetry, unit diagonal and bounded entries on a realistic panel."""
        net = correlation_matrix(build_return_matrix(cross_rates(block_panel, "AAA")))
        assert net.n == len(block_panel.currencies) - 1
        np.testing.assert_array_equal(net.R, net.R.T)
        np.testing.assert_array_equal(np.diag(net.R), 1.0)
        assert np.all(np.abs(net.R) <= 1.0)
        np.testing.assert_array_equal(net.weights, np.abs(net.R))

    def test_single_row(self) -> None:
        """Test that one row cannot form a network."""
        with pytest.raises(SizeError):
            correlation_matrix(_matrix([[1, -1]]))

    def test_matrices_frozen(self) -> None:
        """Test that network matrices are read-only."""
        net = correlation_matrix(_matrix([[1, -1], [-1, 1]]))
        with pytest.raises(ValueError, match="read-only"):
            net.R[0, 1] = 0.5

    def test_export(self) -> None:
        """Test the square CSV layout of an exported matrix."""
        text = export_matrix(["AAA", "BBB"], np.array([[1.0, 0.25], [0.25, 1.0]]))
        assert text.splitlines() == ["node,AAA,BBB", "AAA,1,0.25", "BBB,0.25,1"]


def _equicorrelated(rho: float, n: int) -> np.ndarray:
    return np.full((n, n), rho) + (1 - rho) * np.eye(n)


class TestLargestEigenvalue:
    """Test power iteration."""

    def test_identity(self) -> None:
        """Test that the identity has eigenvalue 1."""
        assert largest_eigenvalue(np.eye(6)) == pytest.approx(1.0, abs=1e-12)

    def test_all_ones(self) -> None:
        """Test that the all-ones matrix of size n has eigenvalue n."""
        assert largest_eigenvalue(np.ones((5, 5))) == pytest.approx(5.0, rel=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_dense_solver(self, seed: int) -> None:
        """Test agreement with a dense symmetric eigensolver."""
        R = random_correlation(10, np.random.default_rng(seed))
        expected = np.linalg.eigvalsh(R)[-1]
        assert largest_eigenvalue(R) == pytest.approx(expected, rel=1e-9)

    def test_bounds(self) -> None:
        """Test that lambda_max lies between 1 and N for a correlation matrix."""
        R = random_correlation(7, np.random.default_rng(11))
        assert 1.0 <= largest_eigenvalue(R) <= 7.0

    @pytest.mark.parametrize("rho2", [0.499, 0.4999, 0.49999])
    def test_near_degenerate_leading_pair(self, rho2: float) -> None:
        """Test two nearly equal leading eigenvalues from equicorrelated blocks."""
        R = block_diag(_equicorrelated(0.5, 5), _equicorrelated(rho2, 5))
        expected = np.linalg.eigvalsh(R)[-1]
        assert largest_eigenvalue(R) == pytest.approx(expected, rel=1e-9)

    def test_short_iteration_falls_back(self) -> None:
        """Test that an exhausted iteration cap still yields the eigenvalue."""
        R = random_correlation(10, np.random.default_rng(1))
        expected = np.linalg.eigvalsh(R)[-1]
        assert largest_eigenvalue(R, max_iter=1) == pytest.approx(expected, rel=1e-9)

    def test_no_convergence(self) -> None:
        """Test that a failing fallback solver is a numeric error."""
        R = random_correlation(10, np.random.default_rng(1))
        with (
            patch(
                "fx_network.graph.correlation.eigsh",
                side_effect=ArpackNoConvergence("no convergence", np.empty(0), np.empty(0)),
            ),
            pytest.raises(NumericError),
        ):
            largest_eigenvalue(R, max_iter=1)
