from .cubic_uniform_grid_builder import CubicUniformGridBuilder
from .factorization import Factorization
from .factorization_search import optimal_factorization
from .gaussian_cubic_grid_builder import GaussianCubicGridBuilder
from .gaussian_spherical_grid_builder import GaussianSphericalGridBuilder
from .grid import Grid
from .reference_kind import ReferenceKind
from .spherical_uniform_grid_builder import SphericalUniformGridBuilder

BUILDERS = {
    ReferenceKind.SPHERICAL_UNIFORM: SphericalUniformGridBuilder,
    ReferenceKind.CUBIC_UNIFORM: CubicUniformGridBuilder,
    ReferenceKind.GAUSSIAN_SPHERICAL: GaussianSphericalGridBuilder,
    ReferenceKind.GAUSSIAN_CUBIC: GaussianCubicGridBuilder,
}


def build_grid(dim: int, n: int, kind: ReferenceKind, fact: Factorization | None = None,
               discretization: int | None = None, threads: int | None = None) -> Grid:
    """Build a reference grid; spherical kinds without ``fact`` get the W2-optimal one."""
    builder = BUILDERS[kind](dim)
    if kind.is_spherical and fact is None and dim > 1:
        builder.assert_size(n)
        fact = optimal_factorization(n, dim, kind, discretization, threads)
    return builder.build(n, fact)
