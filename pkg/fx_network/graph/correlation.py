"""Correlation matrix, weights, metric distances and the dominant eigenvalue."""

from collections.abc import Sequence

import numpy as np
import pandas as pd
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from fx_network.constants import (
    CORRELATION_TOLERANCE,
    FLOAT_FORMAT,
    POWER_ITERATION_CAP,
    POWER_ITERATION_TOL,
)
from fx_network.data_models import CorrelationNetwork, ReturnMatrix
from fx_network.errors import DomainError, NumericError, SizeError
from fx_network.utils import utils

_MODULE = "correlation-net"


def distance(r: float) -> float:
    """Metric distance sqrt(2 (1 - r)) of a correlation coefficient.

    Raises:
        DomainError: |r| exceeds 1 beyond rounding noise.

    """
    if not np.isfinite(r) or abs(r) > 1 + CORRELATION_TOLERANCE:
        raise DomainError(f"Correlation {r} outside [-1, 1]", module=_MODULE)
    return float(np.sqrt(2.0 * (1.0 - min(1.0, max(-1.0, r)))))


def correlation_from_distance(d: float) -> float:
    """Inverse of `distance`: r = 1 - d**2 / 2.

    Raises:
        DomainError: d outside [0, 2].

    """
    if not np.isfinite(d) or d < 0 or d > 2 + CORRELATION_TOLERANCE:
        raise DomainError(f"Distance {d} outside [0, 2]", module=_MODULE)
    return 1.0 - d * d / 2.0


def distance_matrix(R: np.ndarray) -> np.ndarray:
    """Element-wise metric distance with |R| clamped to 1 and a zero diagonal."""
    clamped = np.clip(R, -1.0, 1.0)
    D = np.sqrt(2.0 * (1.0 - clamped))
    np.fill_diagonal(D, 0.0)
    return D


def correlation_matrix(m: ReturnMatrix) -> CorrelationNetwork:
    """Pearson correlation network R = M M^T / T of normalized returns.

    Raises:
        SizeError: Fewer than two rows.

    """
    if m.n < 2:  # noqa: PLR2004
        raise SizeError(f"Correlation network needs at least 2 nodes, got {m.n}", module=_MODULE)
    M = m.values
    R = (M @ M.T) / m.T
    R = (R + R.T) / 2.0
    R = np.clip(R, -1.0, 1.0)
    np.fill_diagonal(R, 1.0)
    return CorrelationNetwork(
        base=m.base,
        nodes=m.price_currencies,
        R=R,
        weights=np.abs(R),
        distances=distance_matrix(R),
    )


def largest_eigenvalue(
    net: CorrelationNetwork | np.ndarray,
    *,
    max_iter: int = POWER_ITERATION_CAP,
    tol: float = POWER_ITERATION_TOL,
) -> float:
    """Dominant eigenvalue of a correlation matrix by power iteration.

    The start vector is positive and drawn from a fixed-seed generator, so
    repeated calls on the same matrix return the same value. Convergence is
    judged on the relative change of the Rayleigh quotient. When the two
    leading eigenvalues are too close for the iteration to settle within
    max_iter steps, the last iterate seeds a Lanczos solve.

    Raises:
        NumericError: Neither method converged.

    """
    R = np.asarray(net.R if isinstance(net, CorrelationNetwork) else net, dtype=float)
    n = R.shape[0]
    if n == 1:
        return float(R[0, 0])
    v = np.random.Generator(np.random.PCG64(0)).standard_normal(n)
    v = np.abs(v) + 1.0
    v /= np.linalg.norm(v)
    eigenvalue = float(v @ R @ v)
    for iteration in range(1, max_iter + 1):
        w = R @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        v = w / norm
        new_value = float(v @ R @ v)
        if abs(new_value - eigenvalue) <= tol * abs(new_value):
            utils.log(f"Power iteration converged after {iteration} iterations")
            return new_value
        eigenvalue = new_value
    utils.log(
        f"Power iteration did not settle within {max_iter} iterations, switching to Lanczos",
        level="WARN",
    )
    return _lanczos_largest(R, v, tol=tol)


def _lanczos_largest(R: np.ndarray, v0: np.ndarray, *, tol: float) -> float:
    try:
        values = eigsh(R, k=1, which="LA", v0=v0, tol=tol, return_eigenvectors=False)
    except ArpackNoConvergence as e:
        raise NumericError("Lanczos eigenvalue solver did not converge", module=_MODULE) from e
    return float(values[0])


def export_matrix(names: Sequence[str], matrix: np.ndarray) -> str:
    """Square CSV with currency codes as header row and column, 17 significant digits."""
    frame = pd.DataFrame(matrix, index=list(names), columns=list(names))
    frame.index.name = "node"
    return frame.to_csv(float_format=FLOAT_FORMAT, lineterminator="\n")
