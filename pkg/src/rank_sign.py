from dataclasses import dataclass

import numpy as np

from .csv_output import csv_writer
from .empirical_map import EmpiricalMap
from .errors import UnsupportedError


@dataclass(frozen=True, eq=False)
class RankSign:
    """Center-outward rank (0 at the origin) and sign (zero vector at the origin)."""
    rank: int
    sign: np.ndarray

    @property
    def at_origin(self) -> bool:
        return self.rank == 0


def extract_rank_sign(emap: EmpiricalMap) -> list[RankSign]:
    grid = emap.grid
    if not grid.kind.is_spherical:
        raise UnsupportedError(f'{grid.kind.value} vector ranks do not factorize into ranks and signs')
    ranks = grid.shell_index[emap.assignment.perm]
    images = emap.images
    norms = np.linalg.norm(images, axis=1)
    signs = np.zeros_like(images)
    outer = ranks > 0
    signs[outer] = images[outer] / norms[outer, None]
    return [RankSign(rank=int(rank), sign=sign) for rank, sign in zip(ranks, signs)]


def write_rank_sign_csv(ranks: list[RankSign], target) -> None:
    dim = len(ranks[0].sign) if ranks else 0
    with csv_writer(target) as writer:
        writer.writerow(['obs_index', 'rank'] + [f'sign_{k}' for k in range(1, dim + 1)])
        for i, item in enumerate(ranks):
            writer.writerow([i, item.rank] + [repr(float(value)) for value in item.sign])
