"""Naive reference computations used only by the tests.

None of these touch the kernels; they enumerate directly from definitions.
"""

import itertools
import math

import numpy as np


def pairwise(points, metric="euclidean"):
    pts = [list(map(float, np.atleast_1d(p))) for p in points]

    def d(a, b):
        diffs = [abs(x - y) for x, y in zip(a, b)]
        if metric == "euclidean":
            return math.sqrt(sum(t * t for t in diffs))
        if metric == "manhattan":
            return sum(diffs)
        return max(diffs)

    return [[d(a, b) for b in pts] for a in pts]


def naive_hausdorff(a, b, metric="euclidean"):
    cross = pairwise(list(a) + list(b), metric)
    na = len(a)
    ab = [[cross[i][na + j] for j in range(len(b))] for i in range(na)]
    fwd = max(min(row) for row in ab)
    bwd = max(min(ab[i][j] for i in range(na)) for j in range(len(b)))
    return max(fwd, bwd)


def naive_config_hausdorff(cross, k):
    """Hausdorff distance between distinct (k+1)-tuple sets, sup product metric.

    ``cross[i, j]`` is the distance from source point ``i`` to target ``j``.
    Enumerates every ordered tuple on both sides.
    """
    cross = np.asarray(cross, dtype=float)
    m, n = cross.shape
    src = np.array(list(itertools.permutations(range(m), k + 1)))
    tgt = np.array(list(itertools.permutations(range(n), k + 1)))
    # (source tuple, target tuple, coordinate)
    d = cross[src[:, None, :], tgt[None, :, :]].max(axis=2)
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def naive_single_linkage(dm):
    """Merge heights by repeatedly fusing the two closest clusters."""
    dm = np.asarray(dm, dtype=float)
    n = len(dm)
    clusters = [{i} for i in range(n)]
    height = np.zeros((n, n))
    while len(clusters) > 1:
        best = None
        for a, b in itertools.combinations(range(len(clusters)), 2):
            link = min(dm[i, j] for i in clusters[a] for j in clusters[b])
            if best is None or link < best[0]:
                best = (link, a, b)
        link, a, b = best
        for i in clusters[a]:
            for j in clusters[b]:
                height[i, j] = height[j, i] = link
        clusters[a] |= clusters[b]
        del clusters[b]
    return height


def lineage_leq(tree, a, b):
    """Order by walking the one-step lineage links upward from ``a``."""
    if a.scale_index > b.scale_index:
        return False
    node = a
    while node.scale_index < b.scale_index:
        node = tree.lineage(node)
    return node == b


def scan_join(tree, a, b):
    """Least upper bound by testing every node of the tree as a candidate."""
    uppers = [c for c in tree.nodes if lineage_leq(tree, a, c) and lineage_leq(tree, b, c)]
    if not uppers:
        return None
    return min(uppers, key=lambda c: c.scale_index)


def lineage_uppers(tree):
    """For each node, the set of nodes above it, by walking one-step lineage links."""
    ups = {}
    for nd in tree.nodes:
        chain, node = [], nd
        while node is not None:
            chain.append(node)
            node = tree.lineage(node)
        ups[nd] = set(chain)
    return ups


def scan_join_all(tree):
    """``scan_join`` for every pair at once, sharing the upward walks."""
    ups = lineage_uppers(tree)
    out = {}
    for a, b in itertools.combinations_with_replacement(tree.nodes, 2):
        common = ups[a] & ups[b]
        out[a, b] = min(common, key=lambda c: c.scale_index) if common else None
    return out


def direct_branch_points(tree):
    """Branch points straight from the two conditions, using block containment."""
    out = {}
    parts = [tree.partition(i).blocks for i in range(len(tree.grid))]
    for i, blocks in enumerate(parts):
        for blk in blocks:
            if i == 0:
                out[(i, blk[0])] = "birth"
                continue
            inside = [p for p in parts[i - 1] if set(p) <= set(blk)]
            if len(inside) >= 2:
                out[(i, blk[0])] = "merge"
            elif not inside:
                out[(i, blk[0])] = "birth"
    return out
