import hashlib
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvalidArgumentError
from .factorization import Factorization
from .reference_kind import ReferenceKind


@dataclass(frozen=True, eq=False)
class Grid:
    """n reference points in R^d with their construction metadata.

    Spherical grids are stored shell-major, direction-minor, with the n_0
    origin copies last; the shell of a point is read from its position.
    """
    dim: int
    kind: ReferenceKind
    points: np.ndarray
    factorization: Factorization | None = None

    def __post_init__(self):
        points = np.array(self.points, dtype=float, copy=True)
        if points.ndim != 2 or points.shape[1] != self.dim:
            raise InvalidArgumentError(f'grid points must have shape (n, {self.dim}), got {points.shape}')
        if self.kind.is_spherical:
            if self.factorization is None:
                raise InvalidArgumentError(f'{self.kind.value} grid needs a factorization')
            if self.factorization.n != len(points):
                raise InvalidArgumentError(
                    f'factorization is for n={self.factorization.n}, grid has {len(points)} points'
                )
        points.setflags(write=False)
        object.__setattr__(self, 'points', points)

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def shell_index(self) -> np.ndarray:
        """Shell j in 1..n_r for each point, 0 for origin copies."""
        if self.factorization is None:
            raise InvalidArgumentError(f'{self.kind.value} grid has no radial shells')
        fact = self.factorization
        shells = np.zeros(self.n, dtype=int)
        shells[:fact.shell_points] = np.arange(fact.shell_points) // fact.n_s + 1
        shells.setflags(write=False)
        return shells

    def to_dict(self) -> dict:
        fact = self.factorization
        return {
            'dim': self.dim,
            'kind': self.kind.value,
            'n': self.n,
            'n_r': fact.n_r if fact else None,
            'n_s': fact.n_s if fact else None,
            'n_0': fact.n_0 if fact else None,
            'points': self.points.tolist(),
            'shell_index': self.shell_index.tolist() if fact else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(',', ':'))

    @classmethod
    def from_dict(cls, payload: dict) -> 'Grid':
        try:
            kind = ReferenceKind(payload['kind'])
            fact = None
            if payload.get('n_r') is not None:
                fact = Factorization(payload['n'], payload['n_r'], payload['n_s'], payload['n_0'])
            points = np.asarray(payload['points'], dtype=float).reshape(-1, int(payload['dim']))
            grid = cls(dim=int(payload['dim']), kind=kind, points=points, factorization=fact)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArgumentError):
                raise
            raise InvalidArgumentError(f'malformed grid payload: {exc}') from exc
        if grid.n != payload['n']:
            raise InvalidArgumentError(f'grid payload declares n={payload["n"]} but holds {grid.n} points')
        return grid

    @classmethod
    def from_json(cls, text: str) -> 'Grid':
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f'grid file is not valid JSON: {exc}') from exc
        return cls.from_dict(payload)

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode('utf-8')).hexdigest()
