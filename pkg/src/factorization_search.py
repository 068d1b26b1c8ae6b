import logging
from concurrent.futures import ThreadPoolExecutor

from .errors import InvalidArgumentError
from .factorization import Factorization, factorization_candidates
from .gaussian_spherical_grid_builder import GaussianSphericalGridBuilder
from .reference_kind import ReferenceKind
from .spherical_uniform_grid_builder import SphericalUniformGridBuilder
from .wasserstein import w2_to_reference

logger = logging.getLogger(__name__)

SPHERICAL_BUILDERS = {
    ReferenceKind.SPHERICAL_UNIFORM: SphericalUniformGridBuilder,
    ReferenceKind.GAUSSIAN_SPHERICAL: GaussianSphericalGridBuilder,
}


def factorization_costs(n: int, dim: int, kind: ReferenceKind, discretization: int | None = None,
                        threads: int | None = None) -> list[tuple[Factorization, float]]:
    """W2 cost of every admissible factorization, in increasing n_r."""
    if kind not in SPHERICAL_BUILDERS:
        raise InvalidArgumentError(f'{kind.value} grids are not factorized')
    builder = SPHERICAL_BUILDERS[kind](dim)
    builder.assert_size(n)
    if dim == 1:
        candidates = [builder.line_factorization(n)]
    else:
        candidates = factorization_candidates(n)
    if not candidates:
        raise InvalidArgumentError(f'no admissible factorization of n={n}')

    def evaluate(fact: Factorization) -> float:
        return w2_to_reference(builder.build(n, fact), discretization)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        costs = list(pool.map(evaluate, candidates))
    return list(zip(candidates, costs))


def best_factorization(costs: list[tuple[Factorization, float]]) -> tuple[Factorization, float]:
    best, best_cost = costs[0]
    # strict comparison keeps the smallest n_r among ties
    for fact, cost in costs[1:]:
        if cost < best_cost:
            best, best_cost = fact, cost
    return best, best_cost


def optimal_factorization(n: int, dim: int, kind: ReferenceKind, discretization: int | None = None,
                          threads: int | None = None) -> Factorization:
    if kind not in SPHERICAL_BUILDERS:
        raise InvalidArgumentError(f'{kind.value} grids are not factorized')
    if n < 2:
        raise InvalidArgumentError(f'cannot factorize n={n}, need n >= 2')
    builder = SPHERICAL_BUILDERS[kind](dim)
    if dim == 1:
        return builder.line_factorization(n)
    best, best_cost = best_factorization(factorization_costs(n, dim, kind, discretization, threads))
    logger.info('optimal factorization for %s, d=%d, n=%d: n_r=%d n_s=%d n_0=%d (W2=%.5f)',
                kind.value, dim, n, best.n_r, best.n_s, best.n_0, best_cost)
    return best
