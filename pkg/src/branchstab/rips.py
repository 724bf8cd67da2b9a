"""Vertices and path components of degree-Rips complexes.

Only the 1-skeleton is built: higher simplices never change which vertices
are connected, so its components are the components of the whole complex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class VertexSet:
    scale: float
    k: int
    members: tuple


@dataclass(frozen=True)
class Partition:
    """Components at one ``(scale, k)``; each block is labelled by its minimum index."""

    scale: float
    k: int
    blocks: tuple

    @property
    def labels(self):
        return tuple(b[0] for b in self.blocks)

    def block(self, label):
        for b in self.blocks:
            if b[0] == label:
                return b
        raise KeyError(label)

    def __len__(self):
        return len(self.blocks)


def _entries(dm):
    return dm.entries if hasattr(dm, "entries") else np.asarray(dm, dtype=np.float64)


def vertex_set(dm, s, k):
    d = _entries(dm)
    counts = (d <= s).sum(axis=1) - 1
    return VertexSet(float(s), int(k), tuple(int(i) for i in np.flatnonzero(counts >= k)))


def partition_from_labels(labels, scale, k):
    """Group a label row (``-1`` = not a vertex) into a Partition."""
    blocks = {}
    for v, lab in enumerate(labels):
        if lab >= 0:
            blocks.setdefault(int(lab), []).append(v)
    return Partition(float(scale), int(k), tuple(tuple(blocks[l]) for l in sorted(blocks)))


def components_at(dm, s, k):
    d = _entries(dm)
    labels = _kernels.sweep_labels(d, np.array([s], dtype=np.float64), k)[0]
    return partition_from_labels(labels, s, k)


def brute_force_components(dm, s, k):
    """Reference implementation: transitive closure of the adjacency relation."""
    d = _entries(dm).tolist()
    n = len(d)
    verts = [i for i in range(n) if sum(1 for j in range(n) if j != i and d[i][j] <= s) >= k]
    vset = set(verts)
    reach = {v: {v} | {w for w in vset if d[v][w] <= s} for v in verts}
    changed = True
    while changed:
        changed = False
        for v in verts:
            grown = set().union(*(reach[w] for w in reach[v]))
            if grown != reach[v]:
                reach[v] = grown
                changed = True
    blocks = {tuple(sorted(reach[v])) for v in verts}
    return Partition(float(s), int(k), tuple(sorted(blocks)))
