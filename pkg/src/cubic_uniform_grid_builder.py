import numpy as np

from .errors import InvalidArgumentError
from .factorization import Factorization
from .grid import Grid
from .grid_builder import GridBuilder
from .qmc import halton
from .reference_kind import ReferenceKind


class CubicUniformGridBuilder(GridBuilder):

    kind = ReferenceKind.CUBIC_UNIFORM

    def transform(self, cube_points: np.ndarray) -> np.ndarray:
        return cube_points

    def layout(self, n: int, fact: Factorization | None) -> Grid:
        if fact is not None:
            raise InvalidArgumentError(f'{self.kind.value} grids take no factorization')
        points = self.transform(halton(self.dim, n, skip=1))
        return Grid(dim=self.dim, kind=self.kind, points=points)
