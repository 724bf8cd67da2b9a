"""The component hierarchy over the phase-change grid and its join calculus.

A hierarchy is stored as an integer array ``labels[i, v]``: the canonical
label (minimum member index) of the component containing point ``v`` at
grid scale ``i``, or -1 when ``v`` is not yet a vertex.  A node is a pair
``(scale_index, label)``.  Because a point, once a vertex, stays a vertex
and components only coarsen, the image of a node at a later scale ``j`` is
simply ``labels[j, label]``; iterated lineage and direct lookup agree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from . import _kernels
from .errors import InvalidNodeError, JoinUndefinedError
from .metric import ScaleGrid, phase_change_scales
from .rips import partition_from_labels


@dataclass(frozen=True, order=True)
class GammaNode:
    scale_index: int
    label: int

    def as_list(self):
        return [self.scale_index, self.label]


class GammaTree:
    """Hierarchy of degree-Rips components for fixed ``k``."""

    def __init__(self, grid, k, labels):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.ndim != 2 or labels.shape[0] != len(grid):
            raise ValueError("labels must have one row per grid scale")
        labels.setflags(write=False)
        self.grid = grid
        self.k = int(k)
        self.labels = labels

    def __eq__(self, other):
        if not isinstance(other, GammaTree):
            return NotImplemented
        return (
            self.k == other.k
            and np.array_equal(self.grid.scales, other.grid.scales)
            and np.array_equal(self.labels, other.labels)
        )

    def __repr__(self):
        return f"GammaTree(n={self.n}, k={self.k}, scales={len(self.grid)}, nodes={len(self.nodes)})"

    @property
    def n(self):
        return self.labels.shape[1]

    @property
    def top_index(self):
        return len(self.grid) - 1

    def scale(self, node_or_index):
        i = node_or_index.scale_index if isinstance(node_or_index, GammaNode) else node_or_index
        return self.grid[i]

    @cached_property
    def nodes(self):
        out = []
        for i, row in enumerate(self.labels):
            out.extend(GammaNode(i, int(l)) for l in np.unique(row[row >= 0]))
        return tuple(out)

    @cached_property
    def node_ids(self):
        return {nd: j for j, nd in enumerate(self.nodes)}

    def is_empty(self):
        return not self.nodes

    def contains(self, node):
        i, l = node.scale_index, node.label
        return 0 <= i < len(self.grid) and 0 <= l < self.n and self.labels[i, l] == l

    def _check(self, node):
        if not isinstance(node, GammaNode) or not self.contains(node):
            raise InvalidNodeError(f"{node!r} is not a node of this hierarchy")

    def members(self, node):
        self._check(node)
        return tuple(int(v) for v in np.flatnonzero(self.labels[node.scale_index] == node.label))

    def nodes_at(self, i):
        row = self.labels[i]
        return tuple(GammaNode(i, int(l)) for l in np.unique(row[row >= 0]))

    def partition(self, i):
        return partition_from_labels(self.labels[i], self.grid[i], self.k)

    def node_of(self, i, point):
        """Node at scale index ``i`` containing ``point``, or None if not a vertex."""
        lab = self.labels[i, point]
        return GammaNode(i, int(lab)) if lab >= 0 else None

    def image(self, node, j):
        """The node containing ``node``'s block at a later scale index ``j``."""
        self._check(node)
        if j < node.scale_index:
            raise ValueError("lineage only runs upward in scale")
        return GammaNode(j, int(self.labels[j, node.label]))

    def lineage(self, node):
        """Containing node at the next grid scale, or None at the top."""
        if node.scale_index >= self.top_index:
            return None
        return self.image(node, node.scale_index + 1)

    def preimages(self, node):
        """Nodes at the previous grid scale whose blocks map into ``node``."""
        self._check(node)
        i = node.scale_index
        if i == 0:
            return ()
        here = self.labels[i] == node.label
        below = self.labels[i - 1][here]
        return tuple(GammaNode(i - 1, int(l)) for l in np.unique(below[below >= 0]))


def build_gamma(dm, k, grid=None, epsilon_merge=None):
    """Partitions at every phase-change scale for density parameter ``k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if grid is None:
        grid = phase_change_scales(dm, epsilon_merge=epsilon_merge)
    if k >= dm.n:
        warnings.warn(
            f"k={k} >= n={dm.n}: no point has k distinct neighbours, hierarchy is empty",
            stacklevel=2,
        )
    labels = _kernels.sweep_labels(dm.entries, grid.scales, k)
    return GammaTree(grid, k, labels)


def node_leq(tree, a, b):
    tree._check(a)
    tree._check(b)
    return a.scale_index <= b.scale_index and tree.labels[b.scale_index, a.label] == b.label


def join(tree, a, b):
    """Least upper bound: first scale at which the two blocks lie in one component."""
    tree._check(a)
    tree._check(b)
    start = max(a.scale_index, b.scale_index)
    same = tree.labels[start:, a.label] == tree.labels[start:, b.label]
    hits = np.flatnonzero(same)
    if not len(hits):
        raise JoinUndefinedError(f"{a} and {b} have no common upper bound")
    u = start + int(hits[0])
    return GammaNode(u, int(tree.labels[u, a.label]))


def join_many(tree, nodes):
    nodes = list(nodes)
    if not nodes:
        raise ValueError("join_many needs at least one node")
    for nd in nodes:
        tree._check(nd)
    return reduce(lambda a, b: join(tree, a, b), nodes)


def leq_matrix(tree, nodes=None):
    """Boolean matrix ``M[p, q] = nodes[p] <= nodes[q]``."""
    nodes = tree.nodes if nodes is None else nodes
    si = np.array([nd.scale_index for nd in nodes], dtype=np.int64)
    lab = np.array([nd.label for nd in nodes], dtype=np.int64)
    if not len(nodes):
        return np.zeros((0, 0), dtype=bool)
    # image label of p's block at q's scale
    img = tree.labels[si[None, :], lab[:, None]]
    return (si[:, None] <= si[None, :]) & (img == lab[None, :])


def join_table(tree, nodes=None):
    """All pairwise joins at once, as indices into ``tree.nodes``.

    Returns an int array ``J`` with ``tree.nodes[J[p, q]] == join(nodes[p], nodes[q])``
    and -1 where no upper bound exists.
    """
    nodes = tree.nodes if nodes is None else nodes
    N = len(nodes)
    if N == 0:
        return np.zeros((0, 0), dtype=np.int64)
    si = np.array([nd.scale_index for nd in nodes], dtype=np.int64)
    lab = np.array([nd.label for nd in nodes], dtype=np.int64)
    m = len(tree.grid)
    cols_a = tree.labels[:, lab]  # (m, N)
    start = np.maximum(si[:, None], si[None, :])
    out = np.full((N, N), -1, dtype=np.int64)
    found = np.zeros((N, N), dtype=bool)
    ids = tree.node_ids
    # encode (scale, label) -> node id through a dense lookup
    lookup = np.full((m, tree.n), -1, dtype=np.int64)
    for nd, j in ids.items():
        lookup[nd.scale_index, nd.label] = j
    for u in range(m):
        eq = cols_a[u][:, None] == cols_a[u][None, :]
        new = eq & (start <= u) & ~found
        if new.any():
            p, q = np.nonzero(new)
            out[p, q] = lookup[u, cols_a[u][p]]
            found |= new
        if found.all():
            break
    return out


def slice_ultrametric(tree, scale_index):
    """Merge-height distances among the blocks at one scale.

    Returns ``(labels, matrix)`` where ``matrix[p, q] = u - s`` for ``u`` the
    scale of the join of blocks ``p`` and ``q`` and ``s`` the slice scale.
    """
    nodes = tree.nodes_at(scale_index)
    if not nodes:
        raise ValueError(f"slice at scale index {scale_index} is empty")
    J = join_table(tree, nodes)
    if (J < 0).any():
        raise JoinUndefinedError(f"blocks at scale index {scale_index} never merge")
    join_scale_index = np.array([nd.scale_index for nd in tree.nodes], dtype=np.int64)[J]
    mat = tree.grid.scales[join_scale_index] - tree.grid[scale_index]
    return tuple(nd.label for nd in nodes), mat


# ---------------------------------------------------------------------------
# export


def gamma_to_json(tree):
    nodes = [
        {"scale_index": nd.scale_index, "label": nd.label, "members": list(tree.members(nd))}
        for nd in tree.nodes
    ]
    lineage = []
    for nd in tree.nodes:
        up = tree.lineage(nd)
        if up is not None:
            lineage.append([nd.scale_index, nd.label, up.label])
    return {
        "k": tree.k,
        "n": tree.n,
        "scales": [float(s) for s in tree.grid.scales],
        "nodes": nodes,
        "lineage": lineage,
    }


def gamma_from_json(data):
    scales = np.array(data["scales"], dtype=np.float64)
    scales.setflags(write=False)
    n = int(data["n"])
    labels = np.full((len(scales), n), -1, dtype=np.int64)
    for nd in data["nodes"]:
        labels[nd["scale_index"], nd["members"]] = nd["label"]
    return GammaTree(ScaleGrid(scales), data["k"], labels)


def _node_name(nd):
    return f'"{nd.scale_index}:{nd.label}"'


def gamma_to_dot(tree):
    lines = ["digraph gamma {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for i in range(len(tree.grid)):
        nodes = tree.nodes_at(i)
        if not nodes:
            continue
        lines.append(f"  subgraph scale_{i} {{")
        lines.append("    rank=same;")
        for nd in nodes:
            members = ",".join(map(str, tree.members(nd)))
            lines.append(f'    {_node_name(nd)} [label="s={tree.grid[i]:.6g}\\n{{{members}}}"];')
        lines.append("  }")
    for nd in tree.nodes:
        up = tree.lineage(nd)
        if up is not None:
            lines.append(f"  {_node_name(nd)} -> {_node_name(up)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
