import logging
from dataclasses import dataclass
from enum import Enum

from .critical_values import CriticalValueCache, CriticalValueTable, assert_alpha, assert_seed, mc_critical_value
from .dataset import Dataset
from .empirical_map import EmpiricalMap, empirical_map
from .errors import InvalidArgumentError
from .grid import Grid
from .grids import build_grid
from .rank_statistics import RankStatistic, hotelling
from .rank_test_result import TestResult
from .reference_kind import ReferenceKind
from .score_kind import ScoreKind
from .scores import assert_compatible, grid_scores, scored_sample
from .settings import DEFAULT_MC_REPS, MIN_MC_REPS
from .special_functions import inv_cdf_chisq, sf_chisq

logger = logging.getLogger(__name__)


class Procedure(Enum):
    W_SPHERICAL = 'w-spherical'  # W+-
    W_CUBIC = 'w-cubic'  # W[]
    VDW_SPHERICAL = 'vdw-spherical'  # vdW+-
    VDW_CUBIC = 'vdw-cubic'  # vdW[]
    VDW_SPHERICAL_N = 'vdw-spherical-n'  # vdW+-N
    VDW_CUBIC_N = 'vdw-cubic-n'  # vdW[]N
    HOTELLING = 'hotelling'

    @property
    def is_rank_test(self) -> bool:
        return self != Procedure.HOTELLING

    @property
    def grid_kind(self) -> ReferenceKind:
        return _RANK_TESTS[self][0]

    @property
    def score_kind(self) -> ScoreKind:
        return _RANK_TESTS[self][1]


_RANK_TESTS = {
    Procedure.W_SPHERICAL: (ReferenceKind.SPHERICAL_UNIFORM, ScoreKind.WILCOXON),
    Procedure.W_CUBIC: (ReferenceKind.CUBIC_UNIFORM, ScoreKind.WILCOXON),
    Procedure.VDW_SPHERICAL: (ReferenceKind.SPHERICAL_UNIFORM, ScoreKind.VDW_SPHERICAL),
    Procedure.VDW_CUBIC: (ReferenceKind.CUBIC_UNIFORM, ScoreKind.VDW_MARGINAL),
    Procedure.VDW_SPHERICAL_N: (ReferenceKind.GAUSSIAN_SPHERICAL, ScoreKind.WILCOXON),
    Procedure.VDW_CUBIC_N: (ReferenceKind.GAUSSIAN_CUBIC, ScoreKind.WILCOXON),
}


@dataclass(frozen=True)
class TwoSampleConfig:
    n1: int
    n2: int
    alpha: float = 0.05
    grid_kind: ReferenceKind = ReferenceKind.SPHERICAL_UNIFORM
    score_kind: ScoreKind = ScoreKind.WILCOXON
    mc_reps: int = DEFAULT_MC_REPS
    seed: int = 0

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise InvalidArgumentError(f'both samples must be nonempty, got n1={self.n1}, n2={self.n2}')
        assert_alpha(self.alpha)
        assert_seed(self.seed)
        if self.mc_reps < MIN_MC_REPS:
            raise InvalidArgumentError(f'need at least {MIN_MC_REPS} Monte-Carlo replications, got {self.mc_reps}')

    @classmethod
    def for_procedure(cls, procedure: Procedure, n1: int, n2: int, **kwargs) -> 'TwoSampleConfig':
        if not procedure.is_rank_test:
            raise InvalidArgumentError(f'{procedure.value} is not a rank test')
        return cls(n1=n1, n2=n2, grid_kind=procedure.grid_kind, score_kind=procedure.score_kind, **kwargs)

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def echo(self) -> dict:
        return {
            'n1': self.n1, 'n2': self.n2, 'alpha': self.alpha,
            'grid_kind': self.grid_kind.value, 'score_kind': self.score_kind.value,
            'mc_reps': self.mc_reps, 'seed': self.seed,
        }


class PreparedRankTest:
    """A rank test with its grid, precision matrix, and null table fixed.

    Everything here is data-free, so one instance serves any number of
    datasets of the configured sizes.
    """

    def __init__(self, cfg: TwoSampleConfig, grid: Grid, table: CriticalValueTable):
        if grid.n != cfg.n or grid.kind != cfg.grid_kind:
            raise InvalidArgumentError(
                f'config expects a {cfg.grid_kind.value} grid of {cfg.n} points, got {grid.kind.value} with {grid.n}'
            )
        self.cfg = cfg
        self.grid = grid
        self.table = table
        self.statistic = RankStatistic(grid_scores(grid, cfg.score_kind), cfg.n1)

    def run_on_map(self, emap: EmpiricalMap) -> TestResult:
        if emap.grid is not self.grid and emap.grid.digest != self.grid.digest:
            raise InvalidArgumentError('empirical map was computed on a different grid')
        scored = scored_sample(emap, self.cfg.score_kind)
        statistic = self.statistic(scored.values[:self.cfg.n1])
        return TestResult(statistic, self.table.critical_value, self.table.p_value(statistic),
                          config={**self.cfg.echo(), 'grid_id': self.grid.digest})

    def run(self, data1: Dataset, data2: Dataset) -> TestResult:
        if data1.n != self.cfg.n1 or data2.n != self.cfg.n2:
            raise InvalidArgumentError(
                f'config expects samples of sizes {self.cfg.n1} and {self.cfg.n2}, got {data1.n} and {data2.n}'
            )
        return self.run_on_map(empirical_map(data1.concat(data2), self.grid))


def prepare_rank_test(cfg: TwoSampleConfig, grid: Grid | None = None, dim: int | None = None,
                      cache: CriticalValueCache | None = None, threads: int | None = None) -> PreparedRankTest:
    if grid is None:
        if dim is None:
            raise InvalidArgumentError('need a grid or a dimension to build one')
        grid = build_grid(dim, cfg.n, cfg.grid_kind, threads=threads)
    assert_compatible(grid, cfg.score_kind)
    if cache is not None:
        table = cache.get_or_compute(grid, cfg.score_kind, cfg.n1, cfg.alpha, cfg.mc_reps, cfg.seed, threads)
    else:
        table = mc_critical_value(grid, cfg.score_kind, cfg.n1, cfg.alpha, cfg.mc_reps, cfg.seed, threads)
    return PreparedRankTest(cfg, grid, table)


def two_sample_test(data1: Dataset, data2: Dataset, cfg: TwoSampleConfig, grid: Grid | None = None,
                    cache: CriticalValueCache | None = None, threads: int | None = None) -> TestResult:
    """Pool (sample 1 first), map to the grid, score, and compare with the null table."""
    if data1.dim != data2.dim:
        raise InvalidArgumentError(f'sample dimensions differ: {data1.dim} and {data2.dim}')
    prepared = prepare_rank_test(cfg, grid=grid, dim=data1.dim, cache=cache, threads=threads)
    return prepared.run(data1, data2)


def hotelling_test(data1: Dataset, data2: Dataset, alpha: float = 0.05) -> TestResult:
    """Hotelling's T^2 against its asymptotic chi-square(d) null."""
    assert_alpha(alpha)
    statistic = hotelling(data1, data2)
    critical_value = inv_cdf_chisq(1.0 - alpha, data1.dim)
    return TestResult(statistic, critical_value, sf_chisq(statistic, data1.dim),
                      config={'test': Procedure.HOTELLING.value, 'n1': data1.n, 'n2': data2.n, 'alpha': alpha})
