"""Rejection-frequency curves over a grid of location shifts."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .critical_values import CriticalValueCache, assert_seed
from .csv_output import csv_writer
from .dataset import Dataset
from .empirical_map import empirical_map
from .errors import InvalidArgumentError
from .grids import build_grid
from .scenario import Scenario, sample_scenario
from .settings import DEFAULT_MC_REPS
from .two_sample_procedure import PreparedRankTest, Procedure, TwoSampleConfig, hotelling_test, prepare_rank_test

logger = logging.getLogger(__name__)

DEFAULT_SHIFTS = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)

Observer = Callable[[float, int, Dataset], None]


@dataclass(frozen=True, eq=False)
class PowerCurve:
    scenario: Scenario
    n: int
    n1: int
    tests: tuple[Procedure, ...]
    shifts: tuple[float, ...]
    rejections: np.ndarray      # (tests, shifts) integer counts
    reps: int
    seed: int

    @property
    def rates(self) -> np.ndarray:
        return self.rejections / self.reps

    def rate(self, test: Procedure, shift: float) -> float:
        return float(self.rates[self.tests.index(test), self.shifts.index(shift)])

    def rows(self) -> list[dict]:
        return [
            {'scenario': self.scenario.label, 'test': test.value, 'n': self.n, 'eta': eta,
             'rate': float(self.rates[t, k]), 'reps': self.reps, 'seed': self.seed}
            for t, test in enumerate(self.tests)
            for k, eta in enumerate(self.shifts)
        ]


CSV_COLUMNS = ['scenario', 'test', 'n', 'eta', 'rate', 'reps', 'seed']


def write_power_curve_csv(curve: PowerCurve, target) -> None:
    with csv_writer(target) as writer:
        writer.writerow(CSV_COLUMNS)
        for row in curve.rows():
            row = {**row, 'eta': repr(row['eta']), 'rate': repr(row['rate'])}
            writer.writerow([row[column] for column in CSV_COLUMNS])


class _Replicator:
    """Runs every configured test on the data of one replication."""

    def __init__(self, sc: Scenario, n1: int, n2: int, tests: tuple[Procedure, ...], alpha: float,
                 prepared: dict[Procedure, PreparedRankTest], seed: int, observer: Observer | None):
        self.sc = sc
        self.n1, self.n2 = n1, n2
        self.tests = tests
        self.alpha = alpha
        self.prepared = prepared
        self.seed = seed
        self.observer = observer
        self.grids = {test.grid_kind: prepared[test].grid for test in tests if test.is_rank_test}

    def draw(self, shift: float, rep: int) -> tuple[Dataset, Dataset]:
        # streams keyed by (seed, replication, sample): every shift reuses the same base draws
        first = sample_scenario(self.sc, self.n1, 0.0, np.random.default_rng([self.seed, rep, 0]))
        second = sample_scenario(self.sc, self.n2, shift, np.random.default_rng([self.seed, rep, 1]))
        return first, second

    def __call__(self, task: tuple[float, int]) -> list[bool]:
        shift, rep = task
        data1, data2 = self.draw(shift, rep)
        pooled = data1.concat(data2)
        if self.observer is not None:
            self.observer(shift, rep, pooled)
        maps = {kind: empirical_map(pooled, grid) for kind, grid in self.grids.items()}
        decisions = []
        for test in self.tests:
            if test.is_rank_test:
                decisions.append(self.prepared[test].run_on_map(maps[test.grid_kind]).reject)
            else:
                decisions.append(hotelling_test(data1, data2, self.alpha).reject)
        return decisions


def power_curve(sc: Scenario, n: int, tests, shifts=DEFAULT_SHIFTS, reps: int = 500, seed: int = 0,
                alpha: float = 0.05, mc_reps: int = DEFAULT_MC_REPS, cache: CriticalValueCache | None = None,
                threads: int | None = None, observer: Observer | None = None) -> PowerCurve:
    """Rejection frequency of each test at each shift, all tests sharing each replication's data."""
    tests = tuple(Procedure(test) for test in tests)
    shifts = tuple(float(eta) for eta in shifts)
    if not tests:
        raise InvalidArgumentError('need at least one test')
    if n < 2 or n % 2:
        raise InvalidArgumentError(f'total sample size must be even, got {n}')
    if reps < 1:
        raise InvalidArgumentError(f'need at least one replication, got {reps}')
    if any(eta < 0 for eta in shifts):
        raise InvalidArgumentError(f'shifts must be nonnegative, got {shifts}')
    assert_seed(seed)
    n1 = n2 = n // 2

    grids = {}
    prepared = {}
    for test in tests:
        if not test.is_rank_test:
            continue
        if test.grid_kind not in grids:
            grids[test.grid_kind] = build_grid(sc.dim, n, test.grid_kind, threads=threads)
        cfg = TwoSampleConfig.for_procedure(test, n1, n2, alpha=alpha, mc_reps=mc_reps, seed=seed)
        prepared[test] = prepare_rank_test(cfg, grid=grids[test.grid_kind], cache=cache, threads=threads)

    replicate = _Replicator(sc, n1, n2, tests, alpha, prepared, seed, observer)
    rejections = np.zeros((len(tests), len(shifts)), dtype=int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for k, eta in enumerate(shifts):
            decisions = list(pool.map(replicate, [(eta, rep) for rep in range(reps)]))
            rejections[:, k] = np.sum(np.asarray(decisions, dtype=int), axis=0)
            logger.info('%s n=%d eta=%g: %s', sc.label, n, eta,
                        ', '.join(f'{test.value}={count / reps:.3f}' for test, count in zip(tests, rejections[:, k])))
    return PowerCurve(scenario=sc, n=n, n1=n1, tests=tests, shifts=shifts, rejections=rejections,
                      reps=reps, seed=seed)
