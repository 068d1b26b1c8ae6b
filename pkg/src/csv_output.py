import csv
from contextlib import contextmanager
from pathlib import Path


@contextmanager
def csv_writer(target):
    """csv.writer over a path (opened and closed here) or an open text handle."""
    if isinstance(target, (str, Path)):
        with open(target, 'w', newline='') as handle:
            yield csv.writer(handle, lineterminator='\n')
    else:
        yield csv.writer(target, lineterminator='\n')
