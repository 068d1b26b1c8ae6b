import logging

from .errors import InvalidArgumentError
from .factorization import Factorization
from .grid import Grid
from .reference_kind import ReferenceKind

logger = logging.getLogger(__name__)


class GridBuilder:
    """Builds the n-point discretization of one reference law in R^dim."""

    kind: ReferenceKind = None

    def __init__(self, dim: int):
        if isinstance(dim, bool) or int(dim) != dim or dim < 1:
            raise InvalidArgumentError(f'dimension must be a positive integer, got {dim}')
        self.dim = int(dim)

    def assert_size(self, n: int) -> None:
        if isinstance(n, bool) or int(n) != n:
            raise InvalidArgumentError(f'grid size must be an integer, got {n}')
        if n < self.dim + 1:
            raise InvalidArgumentError(f'grid size {n} too small for dimension {self.dim}, need n >= {self.dim + 1}')

    def layout(self, n: int, fact: Factorization | None) -> Grid:
        raise NotImplementedError(f'{type(self).__name__} does not lay out grid points')

    def build(self, n: int, fact: Factorization | None = None) -> Grid:
        self.assert_size(n)
        logger.debug('building %s grid, dim=%d, n=%d', self.kind.value if self.kind else None, self.dim, n)
        return self.layout(int(n), fact)
