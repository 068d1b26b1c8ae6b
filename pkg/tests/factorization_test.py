"""
Factorizations n = n_r * n_s + n_0 and the W2 search over them.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import math

import numpy as np
import pytest

from src.errors import InvalidArgumentError
from src.factorization import Factorization, factorization_candidates
from src.factorization_search import best_factorization, factorization_costs, optimal_factorization
from src.grids import build_grid
from src.reference_kind import ReferenceKind
from src.wasserstein import discrete_w2, reference_discretization, w2_to_reference

# (reference, d) -> optimal n_r for n = 50, 100, 200, 300, 400
TABLE_ONE_SIZES = (50, 100, 200, 300, 400)
TABLE_ONE = {
    (ReferenceKind.SPHERICAL_UNIFORM, 2): (4, 6, 9, 11, 12),
    (ReferenceKind.GAUSSIAN_SPHERICAL, 2): (4, 7, 11, 14, 18),
    (ReferenceKind.SPHERICAL_UNIFORM, 5): (2, 2, 2, 3, 3),
    (ReferenceKind.GAUSSIAN_SPHERICAL, 5): (1, 1, 1, 2, 2),
}
# exact matches required per plane row
TABLE_ONE_PLANE_EXACT = 3


def test_factorization_identity_is_enforced():
    fact = Factorization(100, 6, 16, 4)
    assert fact.shell_points == 96
    assert fact.admissible
    with pytest.raises(InvalidArgumentError):
        Factorization(100, 6, 16, 3)
    with pytest.raises(InvalidArgumentError):
        Factorization(10, -1, -10, 0)


def test_with_shells_takes_the_floor():
    fact = Factorization.with_shells(100, 7)
    assert (fact.n_s, fact.n_0) == (14, 2)
    assert not Factorization(10, 2, 4, 2).admissible, "n_0 must stay below min(n_r, n_s)"


def test_candidates_are_admissible_and_ordered():
    candidates = factorization_candidates(100)
    shells = [fact.n_r for fact in candidates]
    assert shells == sorted(shells), "candidates come in increasing n_r"
    for fact in candidates:
        assert fact.n == fact.n_r * fact.n_s + fact.n_0
        assert fact.n_0 < min(fact.n_r, fact.n_s)
    assert 6 in shells and 50 in shells
    assert 1 in shells, "a single shell of 100 directions leaves no origin copies"
    assert 99 not in shells, "99 shells of one direction would need n_0 = 1, not below n_s = 1"


def test_identical_measures_are_at_distance_zero():
    points = reference_discretization(2, ReferenceKind.SPHERICAL_UNIFORM, 200)
    weights = np.full(200, 1.0 / 200)
    assert discrete_w2(points, weights, points) < 1e-9


def test_single_origin_atom_distance():
    """All mass at the origin against U_d: radii are uniform, so W2 = sqrt(E R^2) = sqrt(1/3)."""
    for dim in (2, 3):
        target = reference_discretization(dim, ReferenceKind.SPHERICAL_UNIFORM, 4000)
        value = discrete_w2(np.zeros((1, dim)), np.array([1.0]), target)
        assert abs(value - math.sqrt(1.0 / 3.0)) < 0.02, f"W2 = {value:.4f} in dimension {dim}"


def test_discrete_w2_rejects_unbalanced_masses():
    from src.errors import SolverError
    target = reference_discretization(2, ReferenceKind.SPHERICAL_UNIFORM, 100)
    with pytest.raises(SolverError):
        discrete_w2(np.zeros((2, 2)), np.array([0.5, 0.6]), target)


def test_balanced_factorization_beats_extremes():
    costs = {}
    for n_r in (1, 6, 50):
        fact = Factorization.with_shells(100, n_r)
        if not fact.admissible:
            continue
        costs[n_r] = w2_to_reference(build_grid(2, 100, ReferenceKind.SPHERICAL_UNIFORM, fact=fact))
    print(costs)
    assert costs[6] < costs[50], "six shells should beat two directions per shell"
    if 1 in costs:
        assert costs[6] < costs[1]


def test_w2_is_stable_in_discretization_size():
    grid = build_grid(2, 100, ReferenceKind.SPHERICAL_UNIFORM, fact=Factorization(100, 6, 16, 4))
    coarse = w2_to_reference(grid, 2000)
    fine = w2_to_reference(grid, 4000)
    assert abs(coarse - fine) < 0.05 * fine, f"W2 moved from {coarse:.5f} to {fine:.5f}"


def test_discretization_must_dominate_grid_size():
    grid = build_grid(2, 100, ReferenceKind.SPHERICAL_UNIFORM, fact=Factorization(100, 6, 16, 4))
    with pytest.raises(InvalidArgumentError):
        w2_to_reference(grid, 999)
    with pytest.raises(InvalidArgumentError):
        w2_to_reference(build_grid(2, 100, ReferenceKind.CUBIC_UNIFORM))


def test_best_factorization_keeps_smallest_shell_count_on_ties():
    a, b, c = Factorization.with_shells(12, 2), Factorization.with_shells(12, 3), Factorization.with_shells(12, 4)
    best, cost = best_factorization([(a, 0.3), (b, 0.2), (c, 0.2)])
    assert best == b and cost == 0.2


def test_costs_follow_candidate_order():
    costs = factorization_costs(30, 2, ReferenceKind.SPHERICAL_UNIFORM, threads=2)
    assert [fact for fact, _ in costs] == factorization_candidates(30)
    serial = factorization_costs(30, 2, ReferenceKind.SPHERICAL_UNIFORM, threads=1)
    assert [cost for _, cost in costs] == [cost for _, cost in serial], "thread count must not change costs"


def test_line_factorization_is_forced():
    fact = optimal_factorization(7, 1, ReferenceKind.SPHERICAL_UNIFORM)
    assert (fact.n_r, fact.n_s, fact.n_0) == (3, 2, 1)


def test_optimal_factorization_for_a_hundred_points_in_the_plane():
    fact = optimal_factorization(100, 2, ReferenceKind.SPHERICAL_UNIFORM)
    print(f"optimal factorization: {fact}")
    assert abs(fact.n_r - 6) <= 1, f"expected about six shells, got {fact}"
    assert fact.admissible


def test_optimal_factorization_errors():
    with pytest.raises(InvalidArgumentError):
        optimal_factorization(100, 2, ReferenceKind.CUBIC_UNIFORM)
    with pytest.raises(InvalidArgumentError):
        optimal_factorization(1, 2, ReferenceKind.SPHERICAL_UNIFORM)


def test_gaussian_factorization_for_a_hundred_points_in_the_plane():
    fact = optimal_factorization(100, 2, ReferenceKind.GAUSSIAN_SPHERICAL)
    print(f"optimal factorization: {fact}")
    assert abs(fact.n_r - 7) <= 1, f"expected about seven shells, got {fact}"
    assert (fact.n_s, fact.n_0) == (100 // fact.n_r, 100 % fact.n_r)


@pytest.mark.slow
def test_table_one_shell_counts():
    mismatches = []
    for (kind, dim), shells in TABLE_ONE.items():
        found = tuple(optimal_factorization(n, dim, kind).n_r for n in TABLE_ONE_SIZES)
        print(f"{kind.value} d={dim}: {found}, expected {shells}")
        mismatches.extend((kind.value, dim, n, got, expected)
                          for n, got, expected in zip(TABLE_ONE_SIZES, found, shells) if abs(got - expected) > 1)
        if dim == 2:
            exact = sum(got == expected for got, expected in zip(found, shells))
            assert exact >= TABLE_ONE_PLANE_EXACT, f"{kind.value}: only {exact} of 5 shell counts exact, got {found}"
    assert not mismatches, f"shell counts off by more than one: {mismatches}"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, '-v']))
