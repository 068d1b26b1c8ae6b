"""
Quadratic rank statistics, their exact null covariance, and Hotelling's T^2.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import itertools

import numpy as np
import pytest
from scipy import stats

from src.critical_values import exact_critical_value
from src.dataset import Dataset
from src.errors import InvalidArgumentError
from src.grids import build_grid
from src.rank_statistics import (RankStatistic, delta_statistic, exact_null_covariance, hotelling,
                                 pseudo_inverse, rank_statistic)
from src.reference_kind import ReferenceKind
from src.score_kind import ScoreKind
from src.scores import ScoredSample
from src.two_sample_procedure import PreparedRankTest, TwoSampleConfig, hotelling_test


def make_scored(values, perm=None):
    values = np.asarray(values, dtype=float).reshape(len(values), -1)
    perm = np.arange(len(values)) if perm is None else perm
    return ScoredSample(dim=values.shape[1], values=values[perm], score=ScoreKind.WILCOXON,
                        grid_id='test', grid_values=values)


def test_delta_examples():
    assert np.array_equal(delta_statistic(make_scored([[0.2, 0.1]] * 6), 3), [0.0, 0.0])
    assert np.allclose(delta_statistic(make_scored([[1.0, 0.0], [0.0, 1.0]]), 1), [0.5, -0.5])


def test_delta_is_scaled_mean_difference():
    rng = np.random.default_rng(1)
    scored = make_scored(rng.standard_normal((10, 2)), rng.permutation(10))
    first, second = scored.values[:4], scored.values[4:]
    expected = 6 / 10 * (first.mean(axis=0) - second.mean(axis=0))
    assert np.allclose(delta_statistic(scored, 4), expected, atol=1e-14)


def test_split_must_leave_both_samples_nonempty():
    scored = make_scored(np.eye(3))
    for n1 in (0, 3):
        with pytest.raises(InvalidArgumentError):
            delta_statistic(scored, n1)


def test_null_covariance_examples():
    assert not np.any(exact_null_covariance(np.full((5, 2), 0.3), 2))
    assert np.allclose(exact_null_covariance(np.array([[-1.0], [1.0]]), 1), [[1.0]])


def test_null_covariance_matches_full_enumeration():
    values = np.random.default_rng(2).standard_normal((6, 2))
    overall = values.mean(axis=0)
    deltas = np.array([values[list(subset)].mean(axis=0) - overall
                       for subset in itertools.combinations(range(6), 3)])
    enumerated = deltas.T @ deltas / len(deltas)
    assert np.allclose(exact_null_covariance(values, 3), enumerated, atol=1e-12)


def test_null_covariance_matches_random_subsets():
    rng = np.random.default_rng(3)
    values = rng.standard_normal((12, 2))
    overall = values.mean(axis=0)
    deltas = np.array([values[rng.permutation(12)[:5]].mean(axis=0) - overall for _ in range(100_000)])
    empirical = deltas.T @ deltas / len(deltas)
    formula = exact_null_covariance(values, 5)
    # standard error of a second moment is about sqrt(2 / reps) of its scale
    tolerance = 4 * np.sqrt(2.0 / len(deltas)) * np.max(np.abs(np.diag(formula)))
    assert np.all(np.abs(empirical - formula) < tolerance), f"{empirical} vs {formula}"


def test_pseudo_inverse_of_zero_is_zero():
    assert not np.any(pseudo_inverse(np.zeros((2, 2))))
    assert np.allclose(pseudo_inverse(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))


def test_statistic_vanishes_when_sample_one_sits_at_the_mean():
    values = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert rank_statistic(make_scored(values), 2) == 0.0


def test_statistic_is_affine_invariant():
    rng = np.random.default_rng(4)
    values = rng.standard_normal((12, 2))
    perm = rng.permutation(12)
    transform = rng.standard_normal((2, 2)) + 3 * np.eye(2)
    base = rank_statistic(make_scored(values, perm), 5)
    moved = rank_statistic(make_scored(values @ transform.T + [4.0, -2.0], perm), 5)
    assert abs(base - moved) < 1e-8 * max(1.0, base)


def test_subset_statistic_matches_sample_statistic():
    values = np.random.default_rng(5).standard_normal((10, 3))
    statistic = RankStatistic(values, 4)
    indices = np.array([7, 1, 4, 2])
    assert statistic.of_subset(indices) == statistic(values[[1, 2, 4, 7]]), "row order must not matter"


def textbook_rank_sum_rejects(ranks_one, n=8, n1=4, alpha=0.05):
    null = [sum(subset) for subset in itertools.combinations(range(1, n + 1), n1)]
    w = sum(ranks_one)
    lower = np.mean([value <= w for value in null])
    upper = np.mean([value >= w for value in null])
    return min(1.0, 2 * min(lower, upper)) <= alpha


def test_line_wilcoxon_test_is_the_rank_sum_test():
    grid = build_grid(1, 8, ReferenceKind.SPHERICAL_UNIFORM)
    table = exact_critical_value(grid, ScoreKind.WILCOXON, 4, 0.05)
    prepared = PreparedRankTest(TwoSampleConfig(n1=4, n2=4), grid, table)
    data = np.array([3.1, -0.4, 7.2, 1.5, -2.8, 0.9, 5.6, -1.3])
    pooled_ranks = stats.rankdata(data).astype(int)
    rejections = 0
    for subset in itertools.combinations(range(8), 4):
        rest = [i for i in range(8) if i not in subset]
        result = prepared.run(Dataset(data[list(subset)]), Dataset(data[rest]))
        expected = textbook_rank_sum_rejects(pooled_ranks[list(subset)])
        assert result.reject == expected, f"subset {subset}: got {result.reject}, rank-sum test says {expected}"
        rejections += result.reject
    assert rejections == 2, "only the two extreme rank sums are significant"


def test_hotelling_vanishes_on_identical_samples():
    data = Dataset(np.random.default_rng(6).standard_normal((20, 3)))
    assert hotelling(data, data) == 0.0


def test_one_dimensional_hotelling_is_squared_t():
    rng = np.random.default_rng(7)
    first, second = rng.standard_normal(15), rng.standard_normal(22) + 0.3
    t = stats.ttest_ind(first, second, equal_var=True).statistic
    value = hotelling(Dataset(first), Dataset(second))
    assert abs(value - t ** 2) < 1e-10 * t ** 2


def test_hotelling_needs_enough_observations():
    with pytest.raises(InvalidArgumentError):
        hotelling(Dataset(np.zeros((2, 3))), Dataset(np.ones((10, 3))))
    with pytest.raises(InvalidArgumentError):
        hotelling(Dataset(np.zeros((10, 2))), Dataset(np.ones((10, 3))))


def test_hotelling_null_size():
    rng = np.random.default_rng(8)
    reps = 4000
    rejections = sum(
        hotelling_test(Dataset(rng.standard_normal((100, 2))), Dataset(rng.standard_normal((100, 2)))).reject
        for _ in range(reps)
    )
    rate = rejections / reps
    assert 0.035 <= rate <= 0.065, f"Hotelling null rejection rate {rate:.4f}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, '-v']))
