"""Seeded random instances for exercising the stability checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import PointCloud
from .stability import NestedPair, verify_interleaving


def random_cloud(rng, n, dim, kind="uniform"):
    """``n`` distinct points.

    ``kind`` is ``"uniform"`` (box), ``"lattice"`` (integer grid, many tied
    distances) or ``"blobs"`` (a few Gaussian clusters, deep hierarchies).
    """
    if kind == "lattice":
        side = max(2, int(np.ceil((2 * n) ** (1.0 / dim))) + 1)
        cells = rng.choice(side**dim, size=n, replace=False)
        pts = np.stack(np.unravel_index(cells, (side,) * dim), axis=1).astype(float)
    elif kind == "blobs":
        centers = rng.uniform(0.0, 10.0, size=(int(rng.integers(2, 5)), dim))
        pts = centers[rng.integers(0, len(centers), size=n)] + rng.normal(0.0, 0.6, size=(n, dim))
    elif kind == "uniform":
        pts = rng.uniform(0.0, 10.0, size=(n, dim))
    else:
        raise ValueError(f"unknown cloud kind {kind!r}")
    return PointCloud(pts)


KINDS = ("uniform", "lattice", "blobs")


def random_nested(rng, max_points=20, max_k=2, max_dim=3):
    """A random ``Y``, a random subset ``X`` of it, and a feasible ``k``."""
    k = int(rng.integers(0, max_k + 1))
    n = int(rng.integers(k + 2, max(k + 3, max_points + 1)))
    dim = int(rng.integers(1, max_dim + 1))
    Y = random_cloud(rng, n, dim, kind=KINDS[int(rng.integers(0, 3))])
    if rng.random() < 0.5:
        # near-complete subsets keep r small and the maps nontrivial
        size = max(k + 1, n - int(rng.integers(0, 3)))
    else:
        size = int(rng.integers(k + 1, n + 1))
    keep = np.sort(rng.choice(n, size=size, replace=False))
    return Y.subset(keep), Y, k


@dataclass
class FuzzOutcome:
    instance: int
    n_x: int
    n_y: int
    k: int
    report: object

    @property
    def passed(self):
        return self.report.passed


def run_fuzz(seed, count, max_points=20, max_k=2, metric="euclidean"):
    """Verify the interleaving on ``count`` random nested pairs.

    Instance ``i`` draws from ``default_rng([seed, i])`` so single instances
    can be replayed.
    """
    outcomes = []
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        X, Y, k = random_nested(rng, max_points=max_points, max_k=max_k)
        pair = NestedPair.build(X, Y, k, metric=metric)
        outcomes.append(FuzzOutcome(i, X.n, Y.n, k, verify_interleaving(pair)))
    return outcomes
