"""CSV ingestion of point clouds."""

import csv
from pathlib import Path

from .errors import DataError
from .metric import PointCloud


def read_cloud(path, delimiter=",", header=False, dedupe=False):
    """Read one point per row; every column is a coordinate.

    Raises DataError on unreadable files, ragged rows, non-numeric cells,
    empty input and (unless ``dedupe``) repeated points.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            rows = [row for row in csv.reader(fh, delimiter=delimiter)]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if header and rows:
        rows = rows[1:]
    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise DataError(f"{path}: no data rows")
    width = len(rows[0])
    points = []
    for lineno, row in enumerate(rows, start=2 if header else 1):
        if len(row) != width:
            raise DataError(f"{path}: ragged row {lineno} ({len(row)} columns, expected {width})")
        try:
            points.append([float(cell) for cell in row])
        except ValueError as exc:
            raise DataError(f"{path}: row {lineno}: {exc}") from exc
    return PointCloud.from_points(points, dedupe=dedupe)
