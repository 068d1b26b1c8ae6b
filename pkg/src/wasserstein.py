"""Order-two Wasserstein distance from a spherical grid to its reference law.

The reference law is replaced by the uniform measure on an M-point QMC
discretization and the grid/discretization pair is solved exactly as a
balanced transportation problem (network simplex, POT's ``emd2``).
"""

import logging
from functools import lru_cache

import numpy as np
import ot
from scipy.spatial.distance import cdist

from .errors import InvalidArgumentError, SolverError
from .grid import Grid
from .qmc import spherical_uniform_qmc
from .reference_kind import ReferenceKind
from .settings import default_discretization
from .special_functions import vdw_radius

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-12
MAX_SIMPLEX_ITERATIONS = 50_000_000


@lru_cache(maxsize=32)
def reference_discretization(dim: int, kind: ReferenceKind, count: int) -> np.ndarray:
    """``count`` QMC points standing in for U_d or for N(0, I_d)."""
    points = spherical_uniform_qmc(dim, count)
    if kind == ReferenceKind.GAUSSIAN_SPHERICAL:
        radii = np.linalg.norm(points, axis=1)
        points = points * (vdw_radius(radii, dim) / radii)[:, None]
    elif kind != ReferenceKind.SPHERICAL_UNIFORM:
        raise InvalidArgumentError(f'no spherical reference law for {kind.value} grids')
    points.setflags(write=False)
    return points


def discrete_w2(source: np.ndarray, source_weights: np.ndarray, target: np.ndarray) -> float:
    """W2 between a weighted atom set and the uniform measure on ``target``."""
    source_weights = np.asarray(source_weights, dtype=float)
    target_weights = np.full(len(target), 1.0 / len(target))
    for side, weights in (('source', source_weights), ('target', target_weights)):
        if abs(weights.sum() - 1.0) > MASS_TOLERANCE:
            raise SolverError(f'{side} masses sum to {weights.sum()!r}, expected 1')
    cost = cdist(source, target, metric='sqeuclidean')
    value, log = ot.emd2(source_weights, target_weights, cost,
                         numItermax=MAX_SIMPLEX_ITERATIONS, log=True)
    if log.get('warning'):
        raise SolverError(f'transportation solver failed: {log["warning"]}')
    return float(np.sqrt(max(float(value), 0.0)))


def grid_measure(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Atoms of the grid measure, origin copies merged into one atom of mass n_0/n."""
    fact = grid.factorization
    atoms = grid.points[:fact.shell_points]
    weights = np.full(fact.shell_points, 1.0 / grid.n)
    if fact.n_0:
        atoms = np.vstack([atoms, np.zeros((1, grid.dim))])
        weights = np.append(weights, fact.n_0 / grid.n)
    return atoms, weights


def w2_to_reference(grid: Grid, discretization: int | None = None) -> float:
    if not grid.kind.is_spherical:
        raise InvalidArgumentError(f'W2 oracle is defined for spherical grids, got {grid.kind.value}')
    if discretization is None:
        discretization = default_discretization(grid.n)
    if discretization < 10 * grid.n:
        raise InvalidArgumentError(
            f'discretization size {discretization} below 10 * n = {10 * grid.n}'
        )
    atoms, weights = grid_measure(grid)
    target = reference_discretization(grid.dim, grid.kind, int(discretization))
    value = discrete_w2(atoms, weights, target)
    logger.debug('W2(%s, n=%d, %s) = %.6f', grid.kind.value, grid.n, grid.factorization, value)
    return value
