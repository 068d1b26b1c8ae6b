"""Exact optimal pairing between observations and gridpoints."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .dataset import Dataset
from .errors import InvalidArgumentError, SolverError
from .grid import Grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Assignment:
    """perm[i] is the gridpoint paired with observation i."""
    perm: np.ndarray
    total_cost: float

    def __post_init__(self):
        perm = np.array(self.perm, dtype=int, copy=True)
        if not np.array_equal(np.sort(perm), np.arange(len(perm))):
            raise SolverError(f'assignment is not a permutation: {perm.tolist()}')
        perm.setflags(write=False)
        object.__setattr__(self, 'perm', perm)


def cost_matrix(data: Dataset, grid: Grid) -> np.ndarray:
    """Squared Euclidean distances, entry (i, j) = |Z_i - g_j|^2."""
    if data.n != grid.n:
        raise InvalidArgumentError(f'dataset has {data.n} observations, grid has {grid.n} points')
    if data.dim != grid.dim:
        raise InvalidArgumentError(f'dataset dimension {data.dim} differs from grid dimension {grid.dim}')
    return cdist(data.rows, grid.points, metric='sqeuclidean')


def solve_assignment(cost: np.ndarray) -> Assignment:
    """Globally optimal permutation by shortest augmenting paths (Jonker-Volgenant)."""
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise InvalidArgumentError(f'cost matrix must be square, got shape {cost.shape}')
    if not np.all(np.isfinite(cost)):
        raise InvalidArgumentError('cost matrix has non-finite entries')
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(len(rows), dtype=int)
    perm[rows] = cols
    total = float(cost[rows, cols].sum())
    logger.debug('solved %dx%d assignment, cost %.6g', cost.shape[0], cost.shape[1], total)
    return Assignment(perm=perm, total_cost=total)
