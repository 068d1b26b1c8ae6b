from dataclasses import dataclass

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class Factorization:
    """n = n_r * n_s + n_0: radial shells, directions per shell, origin copies."""
    n: int
    n_r: int
    n_s: int
    n_0: int

    def __post_init__(self):
        for name in ('n', 'n_r', 'n_s', 'n_0'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise InvalidArgumentError(f'{name} must be a nonnegative integer, got {value}')
        if self.n != self.n_r * self.n_s + self.n_0:
            raise InvalidArgumentError(
                f'{self.n} != {self.n_r} * {self.n_s} + {self.n_0}'
            )

    @classmethod
    def with_shells(cls, n: int, n_r: int) -> 'Factorization':
        if n_r < 1 or n_r > n:
            raise InvalidArgumentError(f'shell count must lie in [1, {n}], got {n_r}')
        n_s = n // n_r
        return cls(n=n, n_r=n_r, n_s=n_s, n_0=n - n_r * n_s)

    @property
    def admissible(self) -> bool:
        if self.n_r < 1 or self.n_s < 1:
            return False
        return self.n_0 < min(self.n_r, self.n_s)

    @property
    def shell_points(self) -> int:
        return self.n_r * self.n_s


def factorization_candidates(n: int) -> list[Factorization]:
    """Admissible factorizations of n in increasing n_r."""
    if n < 2:
        raise InvalidArgumentError(f'cannot factorize n={n}, need n >= 2')
    candidates = [Factorization.with_shells(n, n_r) for n_r in range(1, n + 1)]
    return [fact for fact in candidates if fact.admissible]
