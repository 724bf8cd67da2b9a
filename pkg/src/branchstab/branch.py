"""Branch points of a hierarchy and the retraction onto them."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidNodeError
from .hierarchy import GammaNode, join, leq_matrix

MERGE = "merge"
BIRTH = "birth"


class BranchTree:
    """Branch points of ``base`` with the order inherited from it.

    ``below[node]`` holds the maximal branch point below every hierarchy
    node, computed once by a bottom-up pass over the grid.
    """

    def __init__(self, base, tags, strict_minimal_births=False):
        self.base = base
        self.tags = dict(sorted(tags.items()))
        self.nodes = tuple(self.tags)
        self.strict_minimal_births = strict_minimal_births
        self._members = frozenset(self.nodes)
        self.below = self._compute_below()
        self.parent = self._compute_parent()

    def __contains__(self, node):
        return node in self._members

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __repr__(self):
        return f"BranchTree(k={self.base.k}, points={len(self)})"

    @property
    def k(self):
        return self.base.k

    def _compute_below(self):
        below = {}
        for nd in self.base.nodes:  # sorted by scale index
            if nd in self._members:
                below[nd] = nd
                continue
            pre = self.base.preimages(nd)
            # a non-branch node has exactly one predecessor block
            below[nd] = below[pre[0]] if pre else None
        return below

    def _compute_parent(self):
        base = self.base
        nearest_above = {}
        for nd in reversed(base.nodes):
            up = base.lineage(nd)
            if up is None:
                nearest_above[nd] = None
            elif up in self._members:
                nearest_above[nd] = up
            else:
                nearest_above[nd] = nearest_above[up]
        return {b: nearest_above[b] for b in self.nodes}


def extract_branch_points(tree, strict_minimal_births=False):
    """Nodes with two or more blocks merging in (merge) or with nothing below (birth).

    Both conditions are read off consecutive grid scales.  At the smallest
    grid index every block is a birth unless ``strict_minimal_births`` is set,
    in which case those nodes are dropped.
    """
    tags = {}
    for nd in tree.nodes:
        if nd.scale_index == 0:
            if not strict_minimal_births:
                tags[nd] = BIRTH
            continue
        pre = tree.preimages(nd)
        if len(pre) >= 2:
            tags[nd] = MERGE
        elif not pre:
            tags[nd] = BIRTH
    return BranchTree(tree, tags, strict_minimal_births)


def _check_member(bt, node):
    if node not in bt:
        raise InvalidNodeError(f"{node!r} is not a branch point")


def branch_join(bt, a, b):
    _check_member(bt, a)
    _check_member(bt, b)
    j = join(bt.base, a, b)
    if j not in bt:
        raise AssertionError(f"join {j} of branch points {a}, {b} is not a branch point")
    return j


def max_branch_below(bt, node):
    bt.base._check(node)
    out = bt.below[node]
    if out is None:
        raise InvalidNodeError(f"no branch point lies below {node!r}")
    return out


@dataclass
class RetractionReport:
    passed: bool
    checked_nodes: int
    failures: list = field(default_factory=list)


def retraction_check(bt):
    """Exhaustively verify that taking the maximal branch point below is a retraction.

    Checks ``max(n) <= n`` on every node, ``max(b) == b`` on branch points and
    that ``n <= m`` implies ``max(n) <= max(m)``.
    """
    base = bt.base
    nodes = base.nodes
    failures = []
    if not nodes:
        return RetractionReport(True, 0)
    ids = base.node_ids
    missing = [nd for nd in nodes if bt.below[nd] is None]
    for nd in missing:
        failures.append({"check": "exists", "node": nd.as_list()})
    if missing:
        return RetractionReport(False, len(nodes), failures)
    L = leq_matrix(base)
    M = np.array([ids[bt.below[nd]] for nd in nodes], dtype=np.int64)
    idx = np.arange(len(nodes))
    for p in np.flatnonzero(~L[M, idx]):
        failures.append({"check": "below", "node": nodes[p].as_list()})
    for b in bt.nodes:
        if bt.below[b] != b:
            failures.append({"check": "fixed", "node": b.as_list()})
    bad = L & ~L[M[:, None], M[None, :]]
    for p, q in zip(*np.nonzero(bad)):
        failures.append({"check": "monotone", "node": nodes[p].as_list(), "other": nodes[q].as_list()})
    return RetractionReport(not failures, len(nodes), failures)


# ---------------------------------------------------------------------------
# export


def branch_to_json(bt):
    base = bt.base
    index = {b: j for j, b in enumerate(bt.nodes)}
    points = [
        {
            "scale": base.grid[b.scale_index],
            "scale_index": b.scale_index,
            "label": b.label,
            "condition": bt.tags[b],
            "members": list(base.members(b)),
        }
        for b in bt.nodes
    ]
    parent = [None if bt.parent[b] is None else index[bt.parent[b]] for b in bt.nodes]
    return {"k": bt.k, "branch_points": points, "parent": parent}


def branch_from_json(data, base):
    """Rebuild a BranchTree over ``base`` from its JSON export."""
    tags = {GammaNode(p["scale_index"], p["label"]): p["condition"] for p in data["branch_points"]}
    return BranchTree(base, tags)


def branch_to_dot(bt):
    base = bt.base
    lines = ["digraph branch_points {", "  rankdir=BT;", "  node [shape=ellipse, fontsize=10];"]
    for b in bt.nodes:
        members = ",".join(map(str, base.members(b)))
        shape = "box" if bt.tags[b] == BIRTH else "ellipse"
        lines.append(
            f'  "{b.scale_index}:{b.label}" [shape={shape}, '
            f'label="{bt.tags[b]} s={base.grid[b.scale_index]:.6g}\\n{{{members}}}"];'
        )
    for b in bt.nodes:
        p = bt.parent[b]
        if p is not None:
            lines.append(f'  "{b.scale_index}:{b.label}" -> "{p.scale_index}:{p.label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
