import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True, eq=False)
class Dataset:
    """n observations in R^d, one per row; row order is observation order."""
    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float, copy=True)
        if rows.ndim == 1:
            rows = rows[:, None]
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 1:
            raise InvalidArgumentError(f'dataset needs shape (n >= 1, d >= 1), got {rows.shape}')
        if not np.all(np.isfinite(rows)):
            raise InvalidArgumentError('dataset entries must be finite')
        rows.setflags(write=False)
        object.__setattr__(self, 'rows', rows)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    def concat(self, other: 'Dataset') -> 'Dataset':
        """Pool two samples, this one first."""
        if other.dim != self.dim:
            raise InvalidArgumentError(f'cannot pool samples of dimension {self.dim} and {other.dim}')
        return Dataset(np.vstack([self.rows, other.rows]))

    @classmethod
    def from_csv(cls, path: str | Path) -> 'Dataset':
        """Read one observation per line; a non-numeric first line is a header."""
        rows, dim = [], None
        try:
            with open(path, newline='', encoding='utf-8') as handle:
                records = list(csv.reader(handle))
        except UnicodeDecodeError as exc:
            raise InvalidArgumentError(f'{path}: not UTF-8 text: {exc}') from exc
        for line_number, record in enumerate(records, start=1):
            if not record or all(not field.strip() for field in record):
                continue
            try:
                values = [float(field) for field in record]
            except ValueError:
                if line_number == 1:
                    continue
                raise InvalidArgumentError(f'{path}: line {line_number}: non-numeric field in {record}')
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise InvalidArgumentError(
                    f'{path}: line {line_number}: expected {dim} fields, got {len(values)}'
                )
            if not all(np.isfinite(values)):
                raise InvalidArgumentError(f'{path}: line {line_number}: non-finite value')
            rows.append(values)
        if not rows:
            raise InvalidArgumentError(f'{path}: no observations')
        return cls(np.asarray(rows))

    def to_csv(self, path: str | Path) -> None:
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            for row in self.rows:
                writer.writerow([repr(float(value)) for value in row])
