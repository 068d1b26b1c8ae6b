"""Data-generating scenarios of the two-sample location power study."""

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .dataset import Dataset
from .errors import InvalidArgumentError


class ScenarioKind(Enum):
    GAUSS_SPHERICAL = 'gaussian'
    GAUSS_CORRELATED = 'gaussian-correlated'
    STUDENT_SPHERICAL = 'student'
    CAUCHY_INDEPENDENT = 'cauchy-independent'
    CAUCHY_SPHERICAL = 'cauchy-spherical'
    BANANA = 'banana'


STUDENT_DF = 2.1

BANANA_WEIGHTS = np.array([0.3, 0.35, 0.35])
BANANA_MEANS = np.array([[0.0, -0.7], [-0.9, 0.3], [0.9, 0.3]])
BANANA_COVARIANCES = np.array([
    [[0.35 ** 2, 0.0], [0.0, 0.35 ** 2]],
    [[0.358, -0.55], [-0.55, 1.02]],
    [[0.358, 0.55], [0.55, 1.02]],
])


def _cholesky(matrix: np.ndarray, name: str) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or not np.allclose(matrix, matrix.T):
        raise InvalidArgumentError(f'{name} must be a symmetric square matrix')
    try:
        return np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as exc:
        raise InvalidArgumentError(f'{name} is not positive definite') from exc


BANANA_FACTORS = np.array([_cholesky(cov, f'banana component {k} covariance')
                           for k, cov in enumerate(BANANA_COVARIANCES)])


def default_correlation(dim: int) -> np.ndarray:
    """vech = (1, 0.8, 1) in the plane, equicorrelation 0.5 otherwise."""
    if dim == 2:
        return np.array([[1.0, 0.8], [0.8, 1.0]])
    return np.full((dim, dim), 0.5) + 0.5 * np.eye(dim)


@dataclass(frozen=True, eq=False)
class Scenario:
    kind: ScenarioKind
    dim: int
    df: float | None = None
    sigma: np.ndarray | None = None
    name: str | None = None
    factor: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < 1:
            raise InvalidArgumentError(f'dimension must be a positive integer, got {self.dim}')
        if self.kind == ScenarioKind.BANANA and self.dim != 2:
            raise InvalidArgumentError(f'banana scenario is bivariate, got dim={self.dim}')
        df = self.df
        if self.kind == ScenarioKind.STUDENT_SPHERICAL:
            df = STUDENT_DF if df is None else float(df)
            if df <= 0:
                raise InvalidArgumentError(f'Student degrees of freedom must be positive, got {df}')
        elif self.kind == ScenarioKind.CAUCHY_SPHERICAL:
            df = 1.0
        object.__setattr__(self, 'df', df)
        factor = None
        if self.kind == ScenarioKind.GAUSS_CORRELATED:
            sigma = default_correlation(self.dim) if self.sigma is None else np.asarray(self.sigma, dtype=float)
            if sigma.shape != (self.dim, self.dim):
                raise InvalidArgumentError(f'sigma must be {self.dim}x{self.dim}, got {sigma.shape}')
            factor = _cholesky(sigma, 'sigma')
            object.__setattr__(self, 'sigma', sigma)
        object.__setattr__(self, 'factor', factor)

    @property
    def label(self) -> str:
        return self.name or f'{self.kind.value}-{self.dim}d'

    def to_dict(self) -> dict:
        return {
            'kind': self.kind.value,
            'dim': self.dim,
            'df': self.df,
            'sigma': None if self.sigma is None else self.sigma.tolist(),
            'name': self.name,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> 'Scenario':
        try:
            return cls(kind=ScenarioKind(payload['kind']), dim=int(payload['dim']), df=payload.get('df'),
                       sigma=payload.get('sigma'), name=payload.get('name'))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArgumentError):
                raise
            raise InvalidArgumentError(f'malformed scenario: {exc}') from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> 'Scenario':
        return cls.from_dict(json.loads(text))


PRESETS = {
    'gaussian-2d': Scenario(ScenarioKind.GAUSS_SPHERICAL, 2, name='gaussian-2d'),
    'student-2d': Scenario(ScenarioKind.STUDENT_SPHERICAL, 2, name='student-2d'),
    'banana-2d': Scenario(ScenarioKind.BANANA, 2, name='banana-2d'),
    'cauchy-independent-2d': Scenario(ScenarioKind.CAUCHY_INDEPENDENT, 2, name='cauchy-independent-2d'),
    'gaussian-correlated-2d': Scenario(ScenarioKind.GAUSS_CORRELATED, 2, name='gaussian-correlated-2d'),
    'cauchy-spherical-2d': Scenario(ScenarioKind.CAUCHY_SPHERICAL, 2, name='cauchy-spherical-2d'),
    'gaussian-5d': Scenario(ScenarioKind.GAUSS_SPHERICAL, 5, name='gaussian-5d'),
    'student-5d': Scenario(ScenarioKind.STUDENT_SPHERICAL, 5, name='student-5d'),
    'gaussian-correlated-5d': Scenario(ScenarioKind.GAUSS_CORRELATED, 5, name='gaussian-correlated-5d'),
    'cauchy-independent-5d': Scenario(ScenarioKind.CAUCHY_INDEPENDENT, 5, name='cauchy-independent-5d'),
}


def _spherical_student(rng: np.random.Generator, count: int, dim: int, df: float) -> np.ndarray:
    gaussian = rng.standard_normal((count, dim))
    return gaussian / np.sqrt(rng.chisquare(df, size=count) / df)[:, None]


def _banana(rng: np.random.Generator, count: int) -> np.ndarray:
    components = rng.choice(len(BANANA_WEIGHTS), size=count, p=BANANA_WEIGHTS)
    gaussian = rng.standard_normal((count, 2))
    return BANANA_MEANS[components] + np.einsum('nij,nj->ni', BANANA_FACTORS[components], gaussian)


def sample_scenario(sc: Scenario, count: int, shift: float, rng: np.random.Generator) -> Dataset:
    """``count`` i.i.d. draws from the scenario law shifted by shift * (1, ..., 1)."""
    if count < 1:
        raise InvalidArgumentError(f'sample size must be positive, got {count}')
    if shift < 0:
        raise InvalidArgumentError(f'shift must be nonnegative, got {shift}')
    if sc.kind == ScenarioKind.GAUSS_SPHERICAL:
        draws = rng.standard_normal((count, sc.dim))
    elif sc.kind == ScenarioKind.GAUSS_CORRELATED:
        draws = rng.standard_normal((count, sc.dim)) @ sc.factor.T
    elif sc.kind in (ScenarioKind.STUDENT_SPHERICAL, ScenarioKind.CAUCHY_SPHERICAL):
        draws = _spherical_student(rng, count, sc.dim, sc.df)
    elif sc.kind == ScenarioKind.CAUCHY_INDEPENDENT:
        draws = rng.standard_cauchy((count, sc.dim))
    elif sc.kind == ScenarioKind.BANANA:
        draws = _banana(rng, count)
    else:
        raise InvalidArgumentError(f'Unknown scenario {sc.kind}')
    return Dataset(draws + shift)
