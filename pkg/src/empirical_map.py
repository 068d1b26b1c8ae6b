from dataclasses import dataclass

import numpy as np

from .assignment import Assignment, cost_matrix, solve_assignment
from .csv_output import csv_writer
from .dataset import Dataset
from .grid import Grid


@dataclass(frozen=True, eq=False)
class EmpiricalMap:
    """Empirical center-outward (or vector-rank) map of a sample onto a grid."""
    grid: Grid
    assignment: Assignment
    sq_distances: np.ndarray

    @property
    def images(self) -> np.ndarray:
        return self.grid.points[self.assignment.perm]

    @property
    def n(self) -> int:
        return self.grid.n


def empirical_map(data: Dataset, grid: Grid) -> EmpiricalMap:
    cost = cost_matrix(data, grid)
    assignment = solve_assignment(cost)
    distances = cost[np.arange(data.n), assignment.perm]
    return EmpiricalMap(grid=grid, assignment=assignment, sq_distances=distances)


def write_assignment_csv(emap: EmpiricalMap, target) -> None:
    with csv_writer(target) as writer:
        writer.writerow(['obs_index', 'grid_index', 'sq_distance'])
        for i, (j, dist) in enumerate(zip(emap.assignment.perm, emap.sq_distances)):
            writer.writerow([i, int(j), repr(float(dist))])
