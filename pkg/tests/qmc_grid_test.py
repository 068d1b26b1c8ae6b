"""
Halton points, sphere directions, the spherical-uniform discretization,
and the four reference grids.
"""

import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import math

import numpy as np
import pytest
from scipy import stats

from src.errors import InvalidArgumentError
from src.factorization import Factorization
from src.grid import Grid
from src.grid_builder import GridBuilder
from src.grids import build_grid
from src.qmc import halton, sphere_directions, spherical_uniform_qmc
from src.reference_kind import ReferenceKind
from src.special_functions import inv_cdf_normal


def star_discrepancy(points: np.ndarray) -> float:
    """Worst local discrepancy over origin-anchored boxes with a sample point as corner."""
    n = len(points)
    worst = 0.0
    for corner in points:
        closed = np.all(points <= corner, axis=1).sum() / n
        opened = np.all(points < corner, axis=1).sum() / n
        volume = float(np.prod(corner))
        worst = max(worst, closed - volume, volume - opened)
    return worst


def test_halton_first_points():
    assert np.allclose(halton(1, 3, skip=1)[:, 0], [0.5, 0.25, 0.75], atol=1e-15), "base-2 radical inverses"
    assert np.allclose(halton(2, 1, skip=1), [[0.5, 1.0 / 3.0]], atol=1e-15), "bases 2 and 3 at index 1"


def test_halton_is_deterministic_and_interior():
    first = halton(5, 500)
    second = halton(5, 500)
    assert np.array_equal(first, second), "Halton points must not depend on state"
    assert np.all(first > 0.0) and np.all(first < 1.0), "coordinates stay strictly inside (0, 1)"


def test_halton_skip_continues_the_sequence():
    long = halton(3, 20, skip=1)
    tail = halton(3, 10, skip=11)
    assert np.array_equal(long[10:], tail), "skip addresses the sequence index"


def test_halton_rejects_empty_requests():
    with pytest.raises(InvalidArgumentError):
        halton(0, 10)
    with pytest.raises(InvalidArgumentError):
        halton(2, 0)


def test_halton_beats_pseudo_random_discrepancy():
    rng = np.random.default_rng(20240101)
    random_discrepancies = [star_discrepancy(rng.random((1000, 2))) for _ in range(50)]
    halton_discrepancy = star_discrepancy(halton(2, 1000))
    print(f"Halton D* = {halton_discrepancy:.5f}, median random D* = {np.median(random_discrepancies):.5f}")
    assert halton_discrepancy <= np.median(random_discrepancies), "Halton should have lower star discrepancy"


def test_sphere_directions_have_unit_norm():
    for dim in (2, 3, 5):
        directions = sphere_directions(dim, 300)
        assert directions.shape == (300, dim)
        assert np.allclose(np.linalg.norm(directions, axis=1), 1.0, atol=1e-12), f"unit norms in dim {dim}"


def test_sphere_directions_are_uniform_on_the_circle():
    directions = sphere_directions(2, 500)
    angles = (np.arctan2(directions[:, 1], directions[:, 0]) + math.pi) / (2 * math.pi)
    distance = stats.kstest(angles, 'uniform').statistic
    assert distance < 0.08, f"angular KS distance {distance:.4f} too large"


def test_plane_directions_have_equal_angular_gaps():
    for count in (5, 12, 16, 22):
        directions = sphere_directions(2, count)
        angles = np.sort(np.mod(np.arctan2(directions[:, 1], directions[:, 0]), 2 * math.pi))
        gaps = np.diff(np.append(angles, angles[0] + 2 * math.pi))
        assert np.allclose(gaps, 2 * math.pi / count, atol=1e-12), f"uneven gaps for {count} directions"


def test_spherical_uniform_qmc_angular_law_in_the_plane():
    points = spherical_uniform_qmc(2, 2000)
    angles = np.mod(np.arctan2(points[:, 1], points[:, 0]), 2 * math.pi) / (2 * math.pi)
    distance = stats.kstest(angles, 'uniform').statistic
    assert distance < 0.01, f"angular KS distance {distance:.4f} too large"


def test_sphere_directions_are_balanced_in_three_dimensions():
    mean = sphere_directions(3, 1000).mean(axis=0)
    assert np.linalg.norm(mean) < 0.1, f"mean direction {mean} not near zero"


def test_sphere_directions_need_two_dimensions():
    with pytest.raises(InvalidArgumentError):
        sphere_directions(1, 10)


def test_spherical_uniform_qmc_radial_law():
    points = spherical_uniform_qmc(2, 2000)
    norms = np.linalg.norm(points, axis=1)
    assert np.all(norms <= 1.0), "discretization stays in the unit ball"
    distance = stats.kstest(norms, 'uniform').statistic
    assert distance < 0.05, f"radial KS distance {distance:.4f} too large"
    inner = np.mean(norms <= 0.5)
    assert 0.45 <= inner <= 0.55, f"radial law is uniform, got {inner:.3f} inside radius 1/2"


def test_line_grid_gives_classical_center_outward_grid():
    grid = build_grid(1, 4, ReferenceKind.SPHERICAL_UNIFORM)
    assert np.allclose(np.sort(grid.points[:, 0]), [-0.6, -0.2, 0.2, 0.6], atol=1e-15)
    odd = build_grid(1, 5, ReferenceKind.SPHERICAL_UNIFORM)
    assert np.allclose(np.sort(odd.points[:, 0]), [2 * i / 6 - 1 for i in range(1, 6)], atol=1e-15)
    assert odd.factorization.n_0 == 1, "odd line grids keep one origin copy"


def test_spherical_uniform_grid_matches_its_factorization():
    fact = Factorization(n=100, n_r=6, n_s=16, n_0=4)
    grid = build_grid(2, 100, ReferenceKind.SPHERICAL_UNIFORM, fact=fact)
    norms = np.linalg.norm(grid.points, axis=1)
    assert grid.n == 100
    assert np.count_nonzero(norms == 0.0) == 4, "four origin copies"
    for j in range(1, 7):
        on_shell = np.isclose(norms, j / 7, atol=1e-12)
        assert on_shell.sum() == 16, f"shell {j} should hold 16 points"
    assert np.array_equal(np.bincount(grid.shell_index), [4] + [16] * 6), "shell index follows position"
    assert np.all(norms[-4:] == 0.0), "origin copies come last"


def test_gaussian_spherical_radii_use_chi_quantiles():
    fact = Factorization(n=8, n_r=2, n_s=4, n_0=0)
    grid = build_grid(2, 8, ReferenceKind.GAUSSIAN_SPHERICAL, fact=fact)
    norms = np.linalg.norm(grid.points, axis=1)
    expected = [math.sqrt(-2 * math.log(1 - 1 / 3))] * 4 + [math.sqrt(-2 * math.log(1 - 2 / 3))] * 4
    assert np.allclose(norms, expected, atol=1e-12), f"shell radii {norms} differ from {expected}"
    uniform = build_grid(2, 8, ReferenceKind.SPHERICAL_UNIFORM, fact=fact)
    directions = uniform.points / np.linalg.norm(uniform.points, axis=1)[:, None]
    assert np.allclose(grid.points / norms[:, None], directions, atol=1e-12), "same directions as (Gi)"


def test_cubic_grids():
    cubic = build_grid(3, 50, ReferenceKind.CUBIC_UNIFORM)
    assert np.all(cubic.points > 0.0) and np.all(cubic.points < 1.0)
    assert np.array_equal(cubic.points, halton(3, 50, skip=1))
    gaussian = build_grid(3, 50, ReferenceKind.GAUSSIAN_CUBIC)
    assert np.array_equal(gaussian.points, inv_cdf_normal(halton(3, 50, skip=1)))
    assert cubic.factorization is None


def test_build_grid_is_deterministic():
    fact = Factorization(n=60, n_r=4, n_s=15, n_0=0)
    for kind in ReferenceKind:
        kwargs = {'fact': fact} if kind.is_spherical else {}
        first = build_grid(3, 60, kind, **kwargs)
        second = build_grid(3, 60, kind, **kwargs)
        assert first.points.tobytes() == second.points.tobytes(), f"{kind.value} grid not reproducible"
        assert first.digest == second.digest


def test_grid_json_round_trip():
    grid = build_grid(2, 20, ReferenceKind.GAUSSIAN_SPHERICAL, fact=Factorization(20, 3, 6, 2))
    loaded = Grid.from_json(grid.to_json())
    assert loaded.points.tobytes() == grid.points.tobytes(), "JSON keeps every bit of the points"
    assert loaded.factorization == grid.factorization
    assert loaded.kind == grid.kind
    assert loaded.digest == grid.digest
    payload = grid.to_dict()
    assert payload['shell_index'] == grid.shell_index.tolist()
    assert payload['shell_index'][-2:] == [0, 0], "origin copies sit in shell 0"


def test_build_grid_errors():
    with pytest.raises(InvalidArgumentError):
        build_grid(3, 3, ReferenceKind.CUBIC_UNIFORM)
    with pytest.raises(InvalidArgumentError):
        build_grid(2, 10, ReferenceKind.SPHERICAL_UNIFORM, fact=Factorization(10, 2, 4, 2))
    with pytest.raises(InvalidArgumentError):
        build_grid(2, 12, ReferenceKind.SPHERICAL_UNIFORM, fact=Factorization(10, 2, 5, 0))


def test_base_builder_has_no_layout():
    with pytest.raises(NotImplementedError):
        GridBuilder(2).build(10)
    with pytest.raises(InvalidArgumentError):
        GridBuilder(2).build(2)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, '-v']))
