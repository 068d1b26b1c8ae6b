import os
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidArgumentError

CACHE_ENV_VAR = 'OTRANK_CACHE'
DEFAULT_CACHE_DIR = '.otrank-cache'

DEFAULT_MC_REPS = 40_000
MIN_MC_REPS = 1_000
MIN_DISCRETIZATION = 2_000
PINV_RELATIVE_THRESHOLD = 1e-10


def default_discretization(n: int) -> int:
    return max(MIN_DISCRETIZATION, 10 * n)


@dataclass(frozen=True)
class Settings:
    cache_dir: Path = Path(DEFAULT_CACHE_DIR)
    mc_reps: int = DEFAULT_MC_REPS
    threads: int | None = None

    def __post_init__(self):
        if self.threads is not None and (isinstance(self.threads, bool) or int(self.threads) != self.threads
                                         or self.threads < 1):
            raise InvalidArgumentError(f'thread count must be a positive integer, got {self.threads}')

    @classmethod
    def from_env(cls, cache_dir: str | None = None, threads: int | None = None) -> 'Settings':
        """Flags beat the environment, the environment beats defaults."""
        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV_VAR) or DEFAULT_CACHE_DIR
        return cls(cache_dir=Path(cache_dir), threads=threads)

    def replications(self, requested: int | None) -> int:
        return self.mc_reps if requested is None else requested
