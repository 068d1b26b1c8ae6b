"""Wilcoxon, spherical van der Waerden, and marginal van der Waerden scores."""

from dataclasses import dataclass

import numpy as np

from .csv_output import csv_writer
from .empirical_map import EmpiricalMap
from .errors import InvalidArgumentError
from .grid import Grid
from .reference_kind import ReferenceKind
from .score_kind import ScoreKind
from .special_functions import inv_cdf_normal, vdw_radius

# which scores each reference grid accepts; Gaussian grids realize the
# van der Waerden tests through the identity score
COMPATIBLE_SCORES = {
    ReferenceKind.SPHERICAL_UNIFORM: {ScoreKind.WILCOXON, ScoreKind.VDW_SPHERICAL},
    ReferenceKind.CUBIC_UNIFORM: {ScoreKind.WILCOXON, ScoreKind.VDW_MARGINAL},
    ReferenceKind.GAUSSIAN_SPHERICAL: {ScoreKind.WILCOXON},
    ReferenceKind.GAUSSIAN_CUBIC: {ScoreKind.WILCOXON},
}


def score_points(points: np.ndarray, kind: ScoreKind, dim: int) -> np.ndarray:
    """Apply the score function J row-wise."""
    points = np.asarray(points, dtype=float).reshape(-1, dim)
    if kind == ScoreKind.WILCOXON:
        return points.copy()
    if kind == ScoreKind.VDW_SPHERICAL:
        norms = np.linalg.norm(points, axis=1)
        if np.any(norms >= 1.0):
            raise InvalidArgumentError('spherical van der Waerden score needs points inside the unit ball')
        values = np.zeros_like(points)
        outer = norms > 0.0
        if np.any(outer):
            values[outer] = points[outer] * (vdw_radius(norms[outer], dim) / norms[outer])[:, None]
        return values
    if kind == ScoreKind.VDW_MARGINAL:
        if np.any(points <= 0.0) or np.any(points >= 1.0):
            raise InvalidArgumentError('marginal van der Waerden score needs coordinates inside (0, 1)')
        return inv_cdf_normal(points)
    raise InvalidArgumentError(f'Unknown score kind {kind}')


def score(u, kind: ScoreKind, dim: int) -> np.ndarray:
    return score_points(np.asarray(u, dtype=float).reshape(1, dim), kind, dim)[0]


def assert_compatible(grid: Grid, kind: ScoreKind) -> None:
    if kind not in COMPATIBLE_SCORES[grid.kind]:
        raise InvalidArgumentError(f'{kind.value} scores are not defined on {grid.kind.value} grids')


def grid_scores(grid: Grid, kind: ScoreKind) -> np.ndarray:
    """Scores of the gridpoints in construction order."""
    assert_compatible(grid, kind)
    values = score_points(grid.points, kind, grid.dim)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class ScoredSample:
    dim: int
    values: np.ndarray
    score: ScoreKind
    grid_id: str
    grid_values: np.ndarray

    @property
    def n(self) -> int:
        return len(self.values)


def scored_sample(emap: EmpiricalMap, kind: ScoreKind) -> ScoredSample:
    grid_values = grid_scores(emap.grid, kind)
    # taken by index so the multiset equals the grid scores bit for bit
    values = grid_values[emap.assignment.perm]
    return ScoredSample(dim=emap.grid.dim, values=values, score=kind,
                        grid_id=emap.grid.digest, grid_values=grid_values)


def write_scored_csv(scored: ScoredSample, target) -> None:
    with csv_writer(target) as writer:
        writer.writerow(['obs_index'] + [f'j_{k}' for k in range(1, scored.dim + 1)])
        for i, row in enumerate(scored.values):
            writer.writerow([i] + [repr(float(value)) for value in row])
