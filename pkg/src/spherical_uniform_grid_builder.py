import numpy as np

from .errors import InvalidArgumentError
from .factorization import Factorization
from .grid import Grid
from .grid_builder import GridBuilder
from .qmc import sphere_directions
from .reference_kind import ReferenceKind


class SphericalUniformGridBuilder(GridBuilder):
    """n_s sphere directions on each of n_r shells, plus n_0 origin copies.

    In dimension one the two directions are -1 and +1 and the grid is
    {2i/(n+1) - 1 : i = 1..n}, the grid of classical center-outward ranks.
    """

    kind = ReferenceKind.SPHERICAL_UNIFORM

    def line_factorization(self, n: int) -> Factorization:
        return Factorization(n=n, n_r=n // 2, n_s=2, n_0=n % 2)

    def uniform_radii(self, fact: Factorization) -> np.ndarray:
        shells = np.arange(1, fact.n_r + 1, dtype=float)
        if self.dim == 1:
            # the classical line grid; norms here are not j/(n_r+1)
            return (2.0 * shells - 1.0 + fact.n_0) / (fact.n + 1)
        return shells / (fact.n_r + 1)

    def shell_radii(self, fact: Factorization) -> np.ndarray:
        return self.uniform_radii(fact)

    def directions(self, n_s: int) -> np.ndarray:
        if self.dim == 1:
            return np.array([[-1.0], [1.0]])
        return sphere_directions(self.dim, n_s)

    def resolve_factorization(self, n: int, fact: Factorization | None) -> Factorization:
        if self.dim == 1:
            forced = self.line_factorization(n)
            if fact is not None and fact != forced:
                raise InvalidArgumentError(f'dimension-one spherical grids are laid out as {forced}, got {fact}')
            return forced
        if fact is None:
            raise InvalidArgumentError(f'{self.kind.value} grid needs a factorization of n={n}')
        if fact.n != n:
            raise InvalidArgumentError(f'factorization is for n={fact.n}, requested n={n}')
        if not fact.admissible:
            raise InvalidArgumentError(f'factorization {fact} violates n_0 < min(n_r, n_s)')
        return fact

    def layout(self, n: int, fact: Factorization | None) -> Grid:
        if n < 2:
            raise InvalidArgumentError(f'cannot factorize n={n}, need n >= 2')
        fact = self.resolve_factorization(n, fact)
        radii = self.shell_radii(fact)
        directions = self.directions(fact.n_s)
        shells = (radii[:, None, None] * directions[None, :, :]).reshape(-1, self.dim)
        origins = np.zeros((fact.n_0, self.dim))
        return Grid(dim=self.dim, kind=self.kind, points=np.vstack([shells, origins]), factorization=fact)
