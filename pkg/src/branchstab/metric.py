"""Point clouds, distance matrices, the phase-change grid and Hausdorff distances."""

from __future__ import annotations

import bisect
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DataError

METRICS = ("euclidean", "manhattan", "chebyshev")


@dataclass(frozen=True)
class PointCloud:
    """A finite data set: ``n`` distinct points in a common dimension.

    Point ids are the row indices ``0..n-1``.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DataError("a point cloud needs at least one point of dimension >= 1")
        if not np.isfinite(pts).all():
            raise DataError("coordinates must be finite")
        if len(np.unique(pts, axis=0)) != len(pts):
            raise DataError("duplicate points in data set (use dedupe to drop them)")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points, dedupe=False):
        """Build a cloud, optionally dropping repeated points (first occurrence kept)."""
        pts = np.array(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if dedupe and pts.ndim == 2 and len(pts):
            _, first = np.unique(pts, axis=0, return_index=True)
            if len(first) < len(pts):
                warnings.warn(f"dropped {len(pts) - len(first)} duplicate point(s)", stacklevel=2)
                pts = pts[np.sort(first)]
        return cls(pts)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.n

    def subset(self, indices):
        return PointCloud(self.points[np.asarray(indices, dtype=np.int64)])


@dataclass(frozen=True)
class DistanceMatrix:
    entries: np.ndarray
    metric_name: str = "euclidean"

    @property
    def n(self):
        return self.entries.shape[0]

    def restrict(self, indices):
        """Distances among the given points, in the given order."""
        idx = np.asarray(indices, dtype=np.int64)
        sub = self.entries[np.ix_(idx, idx)].copy()
        sub.setflags(write=False)
        return DistanceMatrix(sub, self.metric_name)


@dataclass(frozen=True)
class ScaleGrid:
    """Strictly increasing phase-change numbers, starting at 0."""

    scales: np.ndarray

    def __len__(self):
        return len(self.scales)

    def __getitem__(self, i):
        return float(self.scales[i])

    def floor_index(self, value):
        """Index of the largest grid value ``<= value`` (-1 if none)."""
        return bisect.bisect_right(self.scales.tolist(), value) - 1

    def index_of(self, value):
        i = self.floor_index(value)
        if i < 0 or self.scales[i] != value:
            raise KeyError(f"{value!r} is not a grid scale")
        return i


@dataclass(frozen=True)
class SubsetWitness:
    """Injective source -> target assignment realising a bottleneck value."""

    pairs: tuple
    bottleneck: float
    distances: tuple = field(default=(), compare=False)

    def target_of(self, source):
        for s, t in self.pairs:
            if s == source:
                return t
        raise KeyError(source)


def _check_metric(metric):
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")


def cross_distances(a, b, metric="euclidean"):
    """Matrix of distances from every point of ``a`` to every point of ``b``."""
    _check_metric(metric)
    pa = a.points if isinstance(a, PointCloud) else np.atleast_2d(a)
    pb = b.points if isinstance(b, PointCloud) else np.atleast_2d(b)
    if pa.shape[1] != pb.shape[1]:
        raise DataError(f"dimension mismatch: {pa.shape[1]} vs {pb.shape[1]}")
    diff = np.abs(pa[:, None, :] - pb[None, :, :])
    if metric == "euclidean":
        return np.sqrt((diff * diff).sum(axis=-1))
    if metric == "manhattan":
        return diff.sum(axis=-1)
    return diff.max(axis=-1)


def distance_matrix(cloud, metric="euclidean"):
    entries = cross_distances(cloud, cloud, metric)
    np.fill_diagonal(entries, 0.0)
    entries.setflags(write=False)
    return DistanceMatrix(entries, metric)


def phase_change_scales(dm, epsilon_merge=None):
    """Sorted, deduplicated pairwise distances together with 0.

    With ``epsilon_merge`` set, runs of values whose consecutive gaps are at
    most epsilon collapse onto their largest member, so that every distance
    in a run is ``<=`` its representative.
    """
    n = dm.n
    iu = np.triu_indices(n, k=1)
    values = np.unique(np.concatenate(([0.0], dm.entries[iu])))
    if epsilon_merge:
        keep = np.append(np.diff(values) > epsilon_merge, True)
        values = values[keep]
        if values[0] != 0.0:
            values = np.concatenate(([0.0], values))
    values.setflags(write=False)
    return ScaleGrid(values)


def hausdorff_distance(a, b, metric="euclidean"):
    cross = cross_distances(a, b, metric)
    return float(max(cross.min(axis=1).max(), cross.min(axis=0).max()))


def bottleneck_inject(subset, cross):
    """Injective assignment of ``subset`` (row indices of ``cross``) into the columns.

    Minimises the largest assigned distance; among optimal assignments the
    augmenting search prefers cheaper, then lower-indexed, targets.
    """
    rows = [int(s) for s in subset]
    cross = np.asarray(cross, dtype=np.float64)
    if not rows:
        return SubsetWitness((), 0.0)
    if len(rows) > cross.shape[1]:
        raise ValueError("more sources than targets; no injective assignment exists")
    value, match_col = _kernels.bottleneck_assign(cross[rows])
    pairs = sorted((rows[r], int(c)) for c, r in enumerate(match_col) if r >= 0)
    dists = tuple(float(cross[s, t]) for s, t in pairs)
    return SubsetWitness(tuple(pairs), value, dists)


def directed_config_distance(cross, size):
    """Worst ``size``-subset of rows and its bottleneck value into the columns."""
    value, worst = _kernels.directed_config(cross, size)
    return value, tuple(int(i) for i in worst)


def config_hausdorff_witness(x, y, k, metric="euclidean"):
    """Configuration-space Hausdorff distance plus the subset that attains it.

    Returns ``(value, direction, subset, witness)`` where ``direction`` is
    ``"X->Y"`` or ``"Y->X"`` and ``subset`` indexes the source cloud.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k + 1 > min(x.n, y.n):
        raise ValueError(f"k+1 = {k + 1} exceeds a cloud size ({x.n}, {y.n})")
    cross = cross_distances(x, y, metric)
    size = k + 1
    v_xy, s_xy = directed_config_distance(cross, size)
    v_yx, s_yx = directed_config_distance(cross.T, size)
    if v_yx > v_xy:
        return v_yx, "Y->X", s_yx, bottleneck_inject(s_yx, cross.T)
    return v_xy, "X->Y", s_xy, bottleneck_inject(s_xy, cross)


def config_hausdorff_distance(x, y, k, metric="euclidean"):
    """Hausdorff distance between the distinct (k+1)-tuple spaces, sup product metric."""
    return config_hausdorff_witness(x, y, k, metric)[0]
