"""Halton points on the cube, the sphere, and the unit ball."""

import logging

import numpy as np
from scipy.stats import qmc

from .errors import InvalidArgumentError
from .special_functions import inv_cdf_normal

logger = logging.getLogger(__name__)

ZERO_NORM = 1e-12


def _check_positive(name: str, value: int) -> None:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise InvalidArgumentError(f'{name} must be a positive integer, got {value}')


def halton(dim: int, count: int, skip: int = 1) -> np.ndarray:
    """Plain Halton points with bases the first ``dim`` primes.

    Row i is the radical-inverse vector of index ``skip + i``; with the
    default skip the all-zero point at index 0 is dropped.
    """
    _check_positive('dim', dim)
    _check_positive('count', count)
    if skip < 0:
        raise InvalidArgumentError(f'skip must be nonnegative, got {skip}')
    engine = qmc.Halton(d=int(dim), scramble=False)
    if skip:
        engine.fast_forward(int(skip))
    return engine.random(int(count))


def _gaussian_directions(engine, count: int) -> np.ndarray:
    """Draw rows from ``engine`` until ``count`` of them normalize."""
    directions = []
    missing = count
    while missing > 0:
        u = engine.random(missing)
        z = inv_cdf_normal(u)
        norms = np.linalg.norm(z, axis=1)
        keep = norms >= ZERO_NORM
        if not np.all(keep):
            logger.debug('skipping %d Halton rows with a zero normal image', int(np.sum(~keep)))
        directions.append(z[keep] / norms[keep, None])
        missing -= int(np.sum(keep))
    return np.vstack(directions)


def circle_directions(angles: np.ndarray) -> np.ndarray:
    """Points of the unit circle at angles 2*pi*u for u in [0, 1)."""
    theta = 2.0 * np.pi * np.asarray(angles, dtype=float)
    return np.column_stack([np.cos(theta), np.sin(theta)])


def sphere_directions(dim: int, count: int) -> np.ndarray:
    """``count`` unit vectors spread over the sphere S^{dim-1}.

    In the plane they are equiangular, k/count of a turn for k = 0..count-1,
    which keeps the angular gaps equal for every count. From dimension three
    on they are z/|z| with z the normal quantiles of Halton points.
    """
    _check_positive('count', count)
    if dim < 2:
        raise InvalidArgumentError(f'sphere directions need dim >= 2, got {dim}')
    if dim == 2:
        return circle_directions(np.arange(int(count)) / int(count))
    engine = qmc.Halton(d=int(dim), scramble=False)
    engine.fast_forward(1)
    return _gaussian_directions(engine, int(count))


def spherical_uniform_qmc(dim: int, count: int) -> np.ndarray:
    """QMC discretization of the spherical uniform law on the unit ball.

    Radius from the first Halton coordinate, direction from the remaining
    coordinates of the same sequence: one angle in the plane, normalized
    normal quantiles of ``dim`` coordinates otherwise.
    """
    _check_positive('dim', dim)
    _check_positive('count', count)
    if dim == 2:
        u = halton(2, count)
        return u[:, :1] * circle_directions(u[:, 1])
    engine = qmc.Halton(d=int(dim) + 1, scramble=False)
    engine.fast_forward(1)
    points, rows = [], 0
    while rows < count:
        u = engine.random(count - rows)
        z = inv_cdf_normal(u[:, 1:])
        norms = np.linalg.norm(z, axis=1)
        keep = norms >= ZERO_NORM
        points.append(u[keep, :1] * z[keep] / norms[keep, None])
        rows += int(np.sum(keep))
    return np.vstack(points)
