"""Seeded random clouds shared by the property and acceptance suites."""

import numpy as np

from branchstab import PointCloud, distance_matrix
from branchstab.fuzz import KINDS, random_cloud

# filled by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES = []


def cloud(seed, n_max=25, dim_max=3, n_min=1):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_min, n_max + 1))
    dim = int(rng.integers(1, dim_max + 1))
    return random_cloud(rng, n, dim, kind=KINDS[int(rng.integers(0, len(KINDS)))])


def dm_of(seed, **kw):
    return distance_matrix(cloud(seed, **kw))


def line(*xs):
    return PointCloud(np.array(xs, dtype=float))
