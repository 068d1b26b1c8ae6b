"""Quadratic two-sample statistics: rank-based and Hotelling's."""

import math

import numpy as np

from .dataset import Dataset
from .errors import InvalidArgumentError
from .scores import ScoredSample
from .settings import PINV_RELATIVE_THRESHOLD


def _assert_split(n: int, n1: int) -> None:
    if isinstance(n1, bool) or int(n1) != n1 or not 1 <= n1 < n:
        raise InvalidArgumentError(f'sample-1 size must lie in [1, {n - 1}], got {n1}')


def exact_sum(values: np.ndarray) -> np.ndarray:
    """Column sums rounded once, independent of row order."""
    return np.array([math.fsum(column) for column in np.asarray(values).T])


def delta_statistic(scored: ScoredSample, n1: int) -> np.ndarray:
    """Mean score of sample 1 minus the (data-free) mean score of the pool."""
    _assert_split(scored.n, n1)
    overall = exact_sum(scored.grid_values) / scored.n
    return exact_sum(scored.values[:n1]) / n1 - overall


def exact_null_covariance(grid_scores: np.ndarray, n1: int) -> np.ndarray:
    """Covariance of the delta statistic when sample 1 is a random n1-subset."""
    values = np.asarray(grid_scores, dtype=float)
    n = len(values)
    _assert_split(n, n1)
    centered = values - exact_sum(values) / n
    spread = centered.T @ centered / (n - 1)
    return (n - n1) / (n * n1) * spread


def pseudo_inverse(matrix: np.ndarray) -> np.ndarray:
    """Symmetric pseudo-inverse dropping eigenvalues below 1e-10 of the largest."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    if not np.any(matrix):
        return np.zeros_like(matrix)
    return np.linalg.pinv(matrix, rcond=PINV_RELATIVE_THRESHOLD, hermitian=True)


def quadratic_form(delta: np.ndarray, precision: np.ndarray) -> float:
    return max(float(delta @ precision @ delta), 0.0)


class RankStatistic:
    """delta' pinv(Sigma) delta for one grid-score multiset and split.

    The covariance depends only on the grid scores, so one instance serves
    the observed statistic and every Monte-Carlo replication.
    """

    def __init__(self, grid_values: np.ndarray, n1: int):
        self.grid_values = np.asarray(grid_values, dtype=float)
        self.n = len(self.grid_values)
        _assert_split(self.n, n1)
        self.n1 = int(n1)
        self.overall = exact_sum(self.grid_values) / self.n
        self.precision = pseudo_inverse(exact_null_covariance(self.grid_values, self.n1))

    def delta(self, sample_one: np.ndarray) -> np.ndarray:
        return exact_sum(sample_one) / self.n1 - self.overall

    def __call__(self, sample_one: np.ndarray) -> float:
        return quadratic_form(self.delta(sample_one), self.precision)

    def of_subset(self, indices: np.ndarray) -> float:
        return self(self.grid_values[indices])


def rank_statistic(scored: ScoredSample, n1: int) -> float:
    statistic = RankStatistic(scored.grid_values, n1)
    return statistic(scored.values[:n1])


def hotelling(data1: Dataset, data2: Dataset) -> float:
    """Two-sample Hotelling T^2 with the bias-corrected pooled covariance."""
    if data1.dim != data2.dim:
        raise InvalidArgumentError(f'sample dimensions differ: {data1.dim} and {data2.dim}')
    n1, n2, dim = data1.n, data2.n, data1.dim
    if n1 < dim + 1 or n2 < dim + 1:
        raise InvalidArgumentError(f'Hotelling needs at least {dim + 1} observations per sample, got {n1} and {n2}')
    delta = data1.rows.mean(axis=0) - data2.rows.mean(axis=0)
    scatter1 = np.atleast_2d(np.cov(data1.rows, rowvar=False)) * (n1 - 1)
    scatter2 = np.atleast_2d(np.cov(data2.rows, rowvar=False)) * (n2 - 1)
    pooled = (scatter1 + scatter2) / (n1 + n2 - 2)
    covariance = (1.0 / n1 + 1.0 / n2) * pooled
    return quadratic_form(delta, pseudo_inverse(covariance))
