"""Distribution-free critical values of the rank statistics.

Under the null every assignment of the n grid scores to the two samples
is equally likely, so the null law of the statistic is obtained from the
grid alone, either by Monte-Carlo over random label permutations or, for
tiny n, by enumerating all subsets.
"""

import hashlib
import itertools
import json
import logging
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError
from .grid import Grid
from .rank_statistics import RankStatistic
from .score_kind import ScoreKind
from .scores import grid_scores
from .settings import MIN_MC_REPS

logger = logging.getLogger(__name__)

MAX_ENUMERATED_SUBSETS = 200_000
REPLICATION_CHUNK = 1_000


def assert_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f'level alpha must lie in (0, 1), got {alpha}')


def assert_seed(seed: int) -> None:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2 ** 64:
        raise InvalidArgumentError(f'seed must be an unsigned 64-bit integer, got {seed}')


def order_statistic_index(alpha: float, reps: int) -> int:
    """1-based index ceil((1 - alpha)(B + 1)), clamped to B."""
    # rounding first keeps e.g. 0.95 * 40000 from landing a hair above 38000
    position = math.ceil(round((1.0 - alpha) * (reps + 1), 9))
    return min(max(position, 1), reps)


@dataclass(frozen=True)
class CriticalValueKey:
    dim: int
    n: int
    n1: int
    grid_kind: str
    score_kind: str
    reps: int
    seed: int | None
    grid_id: str

    @property
    def digest(self) -> str:
        text = json.dumps(asdict(self), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    @classmethod
    def for_grid(cls, grid: Grid, score: ScoreKind, n1: int, reps: int, seed: int | None) -> 'CriticalValueKey':
        return cls(dim=grid.dim, n=grid.n, n1=int(n1), grid_kind=grid.kind.value,
                   score_kind=score.value, reps=int(reps), seed=seed, grid_id=grid.digest)


@dataclass(frozen=True, eq=False)
class CriticalValueTable:
    key: CriticalValueKey
    alpha: float
    critical_value: float
    null_sample: np.ndarray

    @classmethod
    def from_null_sample(cls, key: CriticalValueKey, alpha: float, null_sample) -> 'CriticalValueTable':
        assert_alpha(alpha)
        ordered = np.sort(np.asarray(null_sample, dtype=float))
        ordered.setflags(write=False)
        index = order_statistic_index(alpha, len(ordered))
        return cls(key=key, alpha=float(alpha), critical_value=float(ordered[index - 1]), null_sample=ordered)

    @property
    def reps(self) -> int:
        return len(self.null_sample)

    def at_level(self, alpha: float) -> 'CriticalValueTable':
        if alpha == self.alpha:
            return self
        return CriticalValueTable.from_null_sample(self.key, alpha, self.null_sample)

    def p_value(self, statistic: float) -> float:
        """Add-one estimate (#{null >= statistic} + 1) / (B + 1)."""
        exceed = self.reps - int(np.searchsorted(self.null_sample, statistic, side='left'))
        return (exceed + 1) / (self.reps + 1)

    def to_dict(self) -> dict:
        return {
            'key': asdict(self.key),
            'alpha': self.alpha,
            'critical_value': self.critical_value,
            'null_sample': self.null_sample.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> 'CriticalValueTable':
        try:
            key = CriticalValueKey(**payload['key'])
            return cls.from_null_sample(key, payload['alpha'], payload['null_sample'])
        except (KeyError, TypeError) as exc:
            raise InvalidArgumentError(f'malformed critical-value table: {exc}') from exc

    def summary(self) -> dict:
        return {**asdict(self.key), 'alpha': self.alpha, 'critical_value': self.critical_value}


def _replications(statistic: RankStatistic, seed: int, first: int, last: int) -> np.ndarray:
    values = np.empty(last - first)
    for offset, rep in enumerate(range(first, last)):
        # one stream per (seed, replication): results ignore scheduling
        rng = np.random.default_rng([seed, rep])
        values[offset] = statistic.of_subset(rng.permutation(statistic.n)[:statistic.n1])
    return values


def mc_critical_value(grid: Grid, score: ScoreKind, n1: int, alpha: float, reps: int, seed: int,
                      threads: int | None = None) -> CriticalValueTable:
    assert_alpha(alpha)
    assert_seed(seed)
    if reps < MIN_MC_REPS:
        raise InvalidArgumentError(f'need at least {MIN_MC_REPS} Monte-Carlo replications, got {reps}')
    statistic = RankStatistic(grid_scores(grid, score), n1)
    bounds = [(first, min(first + REPLICATION_CHUNK, reps)) for first in range(0, reps, REPLICATION_CHUNK)]
    logger.info('simulating %d null statistics for %s/%s, n=%d, n1=%d',
                reps, grid.kind.value, score.value, grid.n, n1)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        chunks = list(pool.map(lambda bound: _replications(statistic, seed, *bound), bounds))
    key = CriticalValueKey.for_grid(grid, score, n1, reps, seed)
    return CriticalValueTable.from_null_sample(key, alpha, np.concatenate(chunks))


def exact_critical_value(grid: Grid, score: ScoreKind, n1: int, alpha: float) -> CriticalValueTable:
    """Critical value from the full permutation null (every n1-subset once)."""
    assert_alpha(alpha)
    statistic = RankStatistic(grid_scores(grid, score), n1)
    count = math.comb(grid.n, n1)
    if count > MAX_ENUMERATED_SUBSETS:
        raise InvalidArgumentError(f'{count} subsets exceed the enumeration limit {MAX_ENUMERATED_SUBSETS}')
    null = [statistic.of_subset(np.asarray(subset)) for subset in itertools.combinations(range(grid.n), n1)]
    key = CriticalValueKey.for_grid(grid, score, n1, count, None)
    return CriticalValueTable.from_null_sample(key, alpha, null)


def atomic_write_text(path: Path, text: str) -> None:
    """Write to a sibling temp file, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile('w', dir=path.parent, prefix=f'.{path.name}.', suffix='.tmp',
                                         delete=False, encoding='utf-8')
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        Path(handle.name).unlink(missing_ok=True)
        raise


class CriticalValueCache:
    """One JSON file per key under ``directory``, named by the key digest."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def path_for(self, key: CriticalValueKey) -> Path:
        return self.directory / f'{key.digest}.json'

    def get(self, key: CriticalValueKey, alpha: float) -> CriticalValueTable | None:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            table = CriticalValueTable.from_dict(json.loads(path.read_text(encoding='utf-8')))
        except (json.JSONDecodeError, UnicodeDecodeError, KeyError, TypeError, ValueError) as exc:
            raise InvalidArgumentError(f'corrupt cache entry {path}: {exc}') from exc
        if table.key != key:
            logger.warning('cache entry %s holds a different key, ignoring it', path.name)
            return None
        logger.debug('critical values loaded from %s', path)
        return table.at_level(alpha)

    def put(self, table: CriticalValueTable) -> Path:
        path = self.path_for(table.key)
        atomic_write_text(path, json.dumps(table.to_dict(), separators=(',', ':')))
        logger.debug('critical values stored in %s', path)
        return path

    def get_or_compute(self, grid: Grid, score: ScoreKind, n1: int, alpha: float, reps: int, seed: int,
                       threads: int | None = None) -> CriticalValueTable:
        key = CriticalValueKey.for_grid(grid, score, n1, reps, seed)
        table = self.get(key, alpha)
        if table is None:
            table = mc_critical_value(grid, score, n1, alpha, reps, seed, threads)
            self.put(table)
        return table
