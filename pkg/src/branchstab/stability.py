"""Interleaving of branch-point trees for nested data sets.

For ``X`` inside ``Y`` with configuration-space Hausdorff distance below
``r``, a vertex map ``theta`` sends vertices of the degree-Rips complex of
``Y`` at scale ``s`` to vertices of that of ``X`` at scale ``s + 2r``.  The
inclusion ``i``, ``theta`` and the shift ``sigma`` induce maps between
branch-point trees via the maximal-branch-point retraction; this module
builds them and checks the interleaving relations between them
exhaustively.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .branch import branch_join, extract_branch_points, max_branch_below
from .errors import DataError, HallConditionError, StabilityError
from .hierarchy import GammaNode, build_gamma, node_leq
from .metric import (
    PointCloud,
    bottleneck_inject,
    config_hausdorff_witness,
    distance_matrix,
)

DEFAULT_MARGIN = 1e-9


def embed(x, y):
    """Index map sending each point of ``x`` to the identical point of ``y``."""
    where = {tuple(p): j for j, p in enumerate(y.points.tolist())}
    emb = []
    for i, p in enumerate(x.points.tolist()):
        j = where.get(tuple(p))
        if j is None:
            raise DataError(f"point {i} of X ({p}) is not a point of Y")
        emb.append(j)
    return tuple(emb)


@dataclass(frozen=True)
class NestedPair:
    """Data sets ``X`` inside ``Y`` with a radius ``r`` above their configuration distance."""

    X: PointCloud
    Y: PointCloud
    embedding: tuple
    k: int
    r: float
    metric: str
    config_distance: float
    worst_subset: tuple = ()
    worst_direction: str = ""

    @classmethod
    def build(cls, X, Y, k, r=None, metric="euclidean"):
        if X.dim != Y.dim:
            raise DataError(f"dimension mismatch: {X.dim} vs {Y.dim}")
        emb = embed(X, Y)
        value, direction, subset, witness = config_hausdorff_witness(X, Y, k, metric)
        if r is None:
            r = value + DEFAULT_MARGIN
        if not r > value:
            src = "Y" if direction == "Y->X" else "X"
            raise HallConditionError(
                f"r={r!r} is not above the configuration distance {value!r}: "
                f"the {src}-subset {list(subset)} has no injective assignment "
                f"within r (its best bottleneck is {witness.bottleneck!r})",
                subset=subset,
                bottleneck=witness.bottleneck,
            )
        return cls(X, Y, emb, int(k), float(r), metric, float(value), tuple(subset), direction)

    # derived structures -------------------------------------------------

    @cached_property
    def dm_y(self):
        return distance_matrix(self.Y, self.metric)

    @cached_property
    def dm_x(self):
        # restricting Y's matrix keeps X's grid an exact subset of Y's
        return self.dm_y.restrict(self.embedding)

    @cached_property
    def cross_yx(self):
        return self.dm_y.entries[:, list(self.embedding)]

    @cached_property
    def in_x(self):
        """Y index -> X index, or -1 for points of ``Y`` outside ``X``."""
        inv = np.full(self.Y.n, -1, dtype=np.int64)
        inv[list(self.embedding)] = np.arange(self.X.n)
        return inv

    @cached_property
    def gamma_x(self):
        return build_gamma(self.dm_x, self.k)

    @cached_property
    def gamma_y(self):
        return build_gamma(self.dm_y, self.k)

    @cached_property
    def branch_x(self):
        return extract_branch_points(self.gamma_x)

    @cached_property
    def branch_y(self):
        return extract_branch_points(self.gamma_y)

    @cached_property
    def _witness_cache(self):
        return {}


@dataclass(frozen=True)
class ThetaMap:
    scale: float
    assignments: dict
    witnesses: dict = field(compare=False)

    def __call__(self, y):
        return self.assignments[y]


def _witness_set(dm, y, s, k):
    row = dm[y]
    near = [j for j in np.lexsort((np.arange(len(row)), row)) if j != y and row[j] <= s]
    return (int(y),) + tuple(int(j) for j in near[:k])


def theta_vertex_map(pair, s):
    """Vertex map from ``L_{s,k}(Y)`` to ``L_{s+2r,k}(X)``.

    Points of ``X`` map to themselves.  Any other vertex ``y`` is matched,
    together with its ``k`` nearest neighbours within ``s``, injectively into
    ``X`` at minimal bottleneck, and goes to its own partner.
    """
    dm = pair.dm_y.entries
    k, r = pair.k, pair.r
    counts = (dm <= s).sum(axis=1) - 1
    verts = np.flatnonzero(counts >= k)
    cache = pair._witness_cache
    assign, wits = {}, {}
    for y in verts.tolist():
        x = int(pair.in_x[y])
        if x >= 0:
            assign[y] = x
            continue
        key = _witness_set(dm, y, s, k)
        w = cache.get(key)
        if w is None:
            w = cache[key] = bottleneck_inject(key, pair.cross_yx)
        if not w.bottleneck <= r:
            raise HallConditionError(
                f"witness set {list(key)} of Y has no injective assignment into X "
                f"within r={r!r} (best bottleneck {w.bottleneck!r})",
                subset=key,
                bottleneck=w.bottleneck,
            )
        assign[y] = w.target_of(y)
        wits[y] = w
    theta = ThetaMap(float(s), assign, wits)
    _check_theta(pair, theta, verts)
    return theta


def _check_theta(pair, theta, verts):
    s, r, k = theta.scale, pair.r, pair.k
    if not len(verts):
        return
    dx = pair.dm_x.entries
    targets = np.array([theta(y) for y in verts.tolist()], dtype=np.int64)
    bound = s + 2 * r
    deg = (dx[targets] <= bound).sum(axis=1) - 1
    bad = np.flatnonzero(deg < k)
    if len(bad):
        y = int(verts[bad[0]])
        raise StabilityError(f"theta({y}) = {theta(y)} is not a vertex at scale {bound!r}")
    dy = pair.dm_y.entries[np.ix_(verts, verts)]
    edges = dy <= s
    far = edges & (dx[np.ix_(targets, targets)] > bound)
    if far.any():
        a, b = (int(verts[v]) for v in np.argwhere(far)[0])
        raise StabilityError(f"edge ({a}, {b}) at scale {s!r} is stretched beyond {bound!r} by theta")


def _shift_index(tree, s, r):
    return tree.grid.floor_index(s + 2 * r)


def induced_map_i(pair):
    gx, gy, by = pair.gamma_x, pair.gamma_y, pair.branch_y
    out = {}
    for b in pair.branch_x:
        s = gx.grid[b.scale_index]
        j = gy.grid.index_of(s)
        targets = {gy.node_of(j, pair.embedding[v]) for v in gx.members(b)}
        if len(targets) != 1 or None in targets:
            raise StabilityError(f"inclusion does not carry {b} to a single component of Y")
        out[b] = max_branch_below(by, targets.pop())
    return out


def induced_map_theta(pair):
    gx, gy, bx = pair.gamma_x, pair.gamma_y, pair.branch_x
    out = {}
    thetas = {}
    for c in pair.branch_y:
        t = gy.grid[c.scale_index]
        theta = thetas.get(c.scale_index)
        if theta is None:
            theta = thetas[c.scale_index] = theta_vertex_map(pair, t)
        f = _shift_index(gx, t, pair.r)
        labels = {int(gx.labels[f, theta(y)]) for y in gy.members(c)}
        if len(labels) != 1 or -1 in labels:
            raise StabilityError(f"theta is not well defined on the component {c} of Y")
        out[c] = max_branch_below(bx, GammaNode(f, labels.pop()))
    return out


def induced_map_sigma(tree, bt, r):
    out = {}
    for b in bt:
        f = _shift_index(tree, tree.grid[b.scale_index], r)
        out[b] = max_branch_below(bt, tree.image(b, f))
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass
class CheckResult:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def record(self, ok, **detail):
        self.checked += 1
        if not ok:
            self.failures.append(detail)

    def to_json(self):
        return {"pass": self.passed, "checked": self.checked, "failures": self.failures}


@dataclass
class InterleavingReport:
    metric: str
    k: int
    r: float
    config_hausdorff: float
    checks: dict
    max_shift: float
    shifts: list = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self):
        return self.error is None and all(c.passed for c in self.checks.values())

    def to_json(self):
        shifts = np.array(self.shifts) if self.shifts else np.zeros(0)
        return {
            "metric": self.metric,
            "k": self.k,
            "r": self.r,
            "config_hausdorff": self.config_hausdorff,
            "checks": {name: c.to_json() for name, c in self.checks.items()},
            "max_shift": self.max_shift,
            "shift_stats": {
                "count": int(len(shifts)),
                "mean": float(shifts.mean()) if len(shifts) else 0.0,
                "max": self.max_shift,
                "bound": 2 * self.r,
            },
            "error": self.error,
            "pass": self.passed,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"


def _monotone(check, name, tree_src, tree_dst, fmap):
    keys = sorted(fmap)
    for a, b in itertools.product(keys, repeat=2):
        if a != b and node_leq(tree_src, a, b):
            ok = node_leq(tree_dst, fmap[a], fmap[b])
            check.record(ok, map=name, node=a.as_list(), other=b.as_list())


def verify_interleaving(pair):
    """Exhaustively check the interleaving relations for ``pair``.

    Construction failures (no admissible theta) propagate; relation failures
    are recorded in the report.
    """
    gx, gy, bx, by = pair.gamma_x, pair.gamma_y, pair.branch_x, pair.branch_y
    r = pair.r
    i_star = induced_map_i(pair)
    th_star = induced_map_theta(pair)
    sig_x = induced_map_sigma(gx, bx, r)
    sig_y = induced_map_sigma(gy, by, r)

    checks = {name: CheckResult() for name in ("eq4", "eq5", "eq6", "join_compat", "monotone", "pi0_diagram")}

    for b in bx:
        lhs, rhs = th_star[i_star[b]], sig_x[b]
        checks["eq4"].record(node_leq(gx, lhs, rhs), node=b.as_list(), lhs=lhs.as_list(), rhs=rhs.as_list())
    for c in by:
        lhs, rhs = i_star[th_star[c]], sig_y[c]
        checks["eq5"].record(node_leq(gy, lhs, rhs), node=c.as_list(), lhs=lhs.as_list(), rhs=rhs.as_list())

    shifts = []
    for side, tree, bt, sig in (("X", gx, bx, sig_x), ("Y", gy, by, sig_y)):
        for b in bt:
            s = tree.grid[b.scale_index]
            top = tree.image(b, _shift_index(tree, s, r))
            shift = tree.grid[sig[b].scale_index] - s
            shifts.append(shift)
            ok = node_leq(tree, b, sig[b]) and node_leq(tree, sig[b], top) and shift <= 2 * r
            checks["eq6"].record(ok, side=side, node=b.as_list(), sigma=sig[b].as_list(), shift=shift)

    for a, b in itertools.combinations(bx.nodes, 2):
        ab = branch_join(bx, a, b)
        lhs = branch_join(by, i_star[a], i_star[b])
        checks["join_compat"].record(
            node_leq(gy, lhs, i_star[ab]), node=a.as_list(), other=b.as_list(), lhs=lhs.as_list()
        )

    _monotone(checks["monotone"], "i", gx, gy, i_star)
    _monotone(checks["monotone"], "theta", gy, gx, th_star)
    _monotone(checks["monotone"], "sigma_X", gx, gx, sig_x)
    _monotone(checks["monotone"], "sigma_Y", gy, gy, sig_y)

    _check_pi0(pair, checks["pi0_diagram"])

    return InterleavingReport(
        metric=pair.metric,
        k=pair.k,
        r=r,
        config_hausdorff=pair.config_distance,
        checks=checks,
        max_shift=max(shifts) if shifts else 0.0,
        shifts=shifts,
    )


def _check_pi0(pair, check):
    """Both triangles of the cluster-level interleaving at every grid scale of ``Y``."""
    gx, gy, r = pair.gamma_x, pair.gamma_y, pair.r
    emb = np.array(pair.embedding, dtype=np.int64)
    for si, s in enumerate(gy.grid.scales.tolist()):
        theta = theta_vertex_map(pair, s)
        fx = _shift_index(gx, s, r)
        fy = _shift_index(gy, s, r)
        ix = gx.grid.floor_index(s)
        # upper triangle: theta after inclusion is the shift on X components
        for x in np.flatnonzero(gx.labels[ix] >= 0).tolist():
            y = int(emb[x])
            ok = y in theta.assignments and theta(y) == x
            ok = ok and gx.labels[fx, theta(y)] == gx.labels[fx, x]
            check.record(ok, triangle="upper", scale=s, point=x)
        # lower triangle: inclusion after theta is the shift on Y components
        for y, x in sorted(theta.assignments.items()):
            ok = gy.labels[fy, emb[x]] == gy.labels[fy, y] >= 0
            check.record(bool(ok), triangle="lower", scale=s, point=y)
