"""Hot inner loops, compiled with numba when available.

Set ``BRANCHSTAB_PURE_NUMPY=1`` to force the uncompiled path.  Both paths
are always importable under explicit names (``*_numba`` / ``*_numpy``) so
they can be compared against each other.
"""

import os
import types

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_FLAG = os.environ.get("BRANCHSTAB_PURE_NUMPY", "").strip().lower()
USE_NUMBA = numba is not None and _FLAG not in ("1", "true", "yes", "on")


def _njit(fn, **rebind):
    """Compile ``fn``; ``rebind`` swaps the globals it calls for compiled ones."""
    if numba is None:  # pragma: no cover
        return fn
    if rebind:
        fn = types.FunctionType(fn.__code__, {**fn.__globals__, **rebind}, fn.__name__)
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# degree filtration


def activation_scales(dm, k):
    """Smallest scale at which each point has ``k`` distinct neighbours."""
    n = dm.shape[0]
    if k == 0:
        return np.zeros(n)
    if k > n - 1:
        return np.full(n, np.inf)
    # column 0 of each sorted row is the zero self-distance
    return np.sort(dm, axis=1)[:, k]


# ---------------------------------------------------------------------------
# component labels over a scale sweep


def _find(parent, v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


_find_nb = _njit(_find)


def _sweep_loop(dm, scales, act):
    n = dm.shape[0]
    m = scales.shape[0]
    out = np.full((m, n), -1, dtype=np.int64)
    ne = n * (n - 1) // 2
    ei = np.empty(ne, dtype=np.int64)
    ej = np.empty(ne, dtype=np.int64)
    et = np.empty(ne, dtype=np.float64)
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            ei[p] = i
            ej[p] = j
            # an edge exists once it is short enough and both ends are vertices
            et[p] = max(dm[i, j], act[i], act[j])
            p += 1
    order = np.argsort(et)
    parent = np.arange(n)
    p = 0
    for si in range(m):
        s = scales[si]
        while p < ne and et[order[p]] <= s:
            e = order[p]
            ra = _find(parent, ei[e])
            rb = _find(parent, ej[e])
            # keep the smaller index as root so roots are canonical labels
            if ra < rb:
                parent[rb] = ra
            elif rb < ra:
                parent[ra] = rb
            p += 1
        for v in range(n):
            if act[v] <= s:
                out[si, v] = _find(parent, v)
    return out


_sweep_nb = _njit(_sweep_loop, _find=_find_nb)


def sweep_labels_numba(dm, scales, k):
    """Component labels of the degree-Rips 1-skeleton at every scale.

    Returns an ``(len(scales), n)`` int64 array holding, for each scale and
    point, the minimum index of the point's component, or -1 when the point
    is not a vertex at that scale.  ``scales`` must be nondecreasing.
    """
    dm = np.ascontiguousarray(dm, dtype=np.float64)
    scales = np.ascontiguousarray(scales, dtype=np.float64)
    act = np.ascontiguousarray(activation_scales(dm, k), dtype=np.float64)
    return _sweep_nb(dm, scales, act)


def sweep_labels_loop(dm, scales, k):
    """Uncompiled union-find sweep; same contract as :func:`sweep_labels_numba`."""
    dm = np.asarray(dm, dtype=np.float64)
    scales = np.asarray(scales, dtype=np.float64)
    return _sweep_loop(dm, scales, activation_scales(dm, k))


def sweep_labels_numpy(dm, scales, k):
    """Vectorised min-label propagation; same contract as :func:`sweep_labels_numba`.

    Scales need not be sorted here.
    """
    dm = np.asarray(dm, dtype=np.float64)
    scales = np.asarray(scales, dtype=np.float64)
    n = dm.shape[0]
    act = activation_scales(dm, k)
    out = np.full((scales.shape[0], n), -1, dtype=np.int64)
    big = np.int64(n)
    idx = np.arange(n, dtype=np.int64)
    for si, s in enumerate(scales):
        active = act <= s
        if not active.any():
            continue
        adj = (dm <= s) & active[:, None] & active[None, :]
        lab = np.where(active, idx, big)
        while True:
            new = np.where(adj, lab[None, :], big).min(axis=1)
            new = np.minimum(new, lab)
            if np.array_equal(new, lab):
                break
            lab = new
        out[si] = np.where(active, lab, -1)
    return out


# ---------------------------------------------------------------------------
# bottleneck injective matching


def _match_at(cross, order, thr, match_col):
    """Kuhn augmenting paths restricted to entries ``<= thr``.

    ``order`` lists each row's columns by (distance, index); the search
    tries cheaper columns first, which fixes the assignment deterministically.
    Fills ``match_col`` (column -> row, -1 if free) and returns success.
    """
    m, n = cross.shape
    for c in range(n):
        match_col[c] = -1
    stack_row = np.empty(m + 1, dtype=np.int64)
    stack_ptr = np.empty(m + 1, dtype=np.int64)
    via_col = np.empty(m + 1, dtype=np.int64)
    visited = np.zeros(n, dtype=np.bool_)
    for root in range(m):
        for c in range(n):
            visited[c] = False
        depth = 0
        stack_row[0] = root
        stack_ptr[0] = 0
        found = False
        while depth >= 0 and not found:
            r = stack_row[depth]
            pushed = False
            while stack_ptr[depth] < n:
                c = order[r, stack_ptr[depth]]
                stack_ptr[depth] += 1
                if cross[r, c] > thr:
                    stack_ptr[depth] = n
                    break
                if visited[c]:
                    continue
                visited[c] = True
                via_col[depth] = c
                if match_col[c] == -1:
                    found = True
                else:
                    stack_row[depth + 1] = match_col[c]
                    stack_ptr[depth + 1] = 0
                    pushed = True
                break
            if found:
                break
            if pushed:
                depth += 1
            else:
                depth -= 1
        if not found:
            return False
        for d in range(depth + 1):
            match_col[via_col[d]] = stack_row[d]
    return True


def _bottleneck(cross, order, cands, match_col):
    """Smallest candidate threshold admitting a perfect matching of the rows."""
    m = cross.shape[0]
    lo_val = 0.0
    for r in range(m):
        v = cross[r, order[r, 0]]
        if v > lo_val:
            lo_val = v
    lo = np.searchsorted(cands, lo_val)
    hi = cands.shape[0] - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _match_at(cross, order, cands[mid], match_col):
            hi = mid
        else:
            lo = mid + 1
    _match_at(cross, order, cands[lo], match_col)
    return cands[lo]


def _directed_config(cross, order, size, match_col):
    """Max over ``size``-subsets of rows of the bottleneck matching value."""
    m = cross.shape[0]
    cands = np.unique(cross)
    worst = np.arange(size)
    best = -1.0
    comb = np.arange(size)
    sub = np.empty((size, cross.shape[1]))
    sub_order = np.empty((size, cross.shape[1]), dtype=np.int64)
    while True:
        for a in range(size):
            sub[a] = cross[comb[a]]
            sub_order[a] = order[comb[a]]
        # a subset already matchable within the running max cannot raise it
        if best < 0.0 or not _match_at(sub, sub_order, best, match_col):
            val = _bottleneck(sub, sub_order, cands, match_col)
            if val > best:
                best = val
                worst[:] = comb
        # advance to the next combination in lexicographic order
        a = size - 1
        while a >= 0 and comb[a] == m - size + a:
            a -= 1
        if a < 0:
            break
        comb[a] += 1
        for b in range(a + 1, size):
            comb[b] = comb[b - 1] + 1
    return best, worst


_match_at_nb = _njit(_match_at)
_bottleneck_nb = _njit(_bottleneck, _match_at=_match_at_nb)
_directed_config_nb = _njit(_directed_config, _match_at=_match_at_nb, _bottleneck=_bottleneck_nb)


def column_order(cross):
    """Per-row column order by (distance, column index)."""
    return np.argsort(cross, axis=1, kind="stable").astype(np.int64)


def bottleneck_assign_numba(cross):
    cross = np.ascontiguousarray(cross, dtype=np.float64)
    order = column_order(cross)
    match_col = np.empty(cross.shape[1], dtype=np.int64)
    val = _bottleneck_nb(cross, order, np.unique(cross), match_col)
    return float(val), match_col


def bottleneck_assign_loop(cross):
    """Minimal-bottleneck injective assignment of rows to columns.

    Returns ``(value, match_col)`` where ``match_col[c]`` is the row assigned
    to column ``c`` or -1.  Requires ``rows <= columns`` and ``rows >= 1``.
    """
    cross = np.asarray(cross, dtype=np.float64)
    order = column_order(cross)
    match_col = np.empty(cross.shape[1], dtype=np.int64)
    val = _bottleneck(cross, order, np.unique(cross), match_col)
    return float(val), match_col


def directed_config_numba(cross, size):
    cross = np.ascontiguousarray(cross, dtype=np.float64)
    order = column_order(cross)
    match_col = np.empty(cross.shape[1], dtype=np.int64)
    best, worst = _directed_config_nb(cross, order, size, match_col)
    return float(best), worst


def directed_config_loop(cross, size):
    """Worst ``size``-subset of rows under bottleneck matching into the columns."""
    cross = np.asarray(cross, dtype=np.float64)
    order = column_order(cross)
    match_col = np.empty(cross.shape[1], dtype=np.int64)
    best, worst = _directed_config(cross, order, size, match_col)
    return float(best), worst


if USE_NUMBA:
    sweep_labels = sweep_labels_numba
    bottleneck_assign = bottleneck_assign_numba
    directed_config = directed_config_numba
else:
    sweep_labels = sweep_labels_numpy
    bottleneck_assign = bottleneck_assign_loop
    directed_config = directed_config_loop
