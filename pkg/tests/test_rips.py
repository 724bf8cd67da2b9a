import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from branchstab import (
    brute_force_components,
    components_at,
    distance_matrix,
    phase_change_scales,
    vertex_set,
)

from instances import dm_of, line


def test_vertex_set_examples(line3):
    dm = distance_matrix(line3)
    assert vertex_set(dm, 1, 1).members == (0, 1)
    assert vertex_set(dm, 0.5, 1).members == ()
    for s in (0, 0.3, 7):
        assert vertex_set(dm, s, 0).members == (0, 1, 2)


def test_components_examples(line3):
    dm = distance_matrix(line3)
    assert components_at(dm, 1, 0).blocks == ((0, 1), (2,))
    assert components_at(dm, 2, 1).blocks == ((0, 1, 2),)
    assert components_at(dm, 3, 2).blocks == ((0, 1, 2),)
    assert components_at(dm, 3, 1).labels == (0,)


def test_oracle_agrees_on_line(line3):
    dm = distance_matrix(line3)
    for s in phase_change_scales(dm).scales:
        for k in range(3):
            assert components_at(dm, s, k) == brute_force_components(dm, s, k)


def test_trivial_partitions():
    dm = distance_matrix(line(0, 10))
    assert brute_force_components(dm, 0, 0).blocks == ((0,), (1,))
    assert brute_force_components(dm, 1, 1).blocks == ()
    assert components_at(dm, 1, 1).blocks == ()


@given(st.integers(0, 100_000), st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_functoriality_and_degree_filtration(seed, k):
    dm = dm_of(seed, n_max=15)
    scales = phase_change_scales(dm).scales
    prev = None
    for s in scales:
        part = components_at(dm, s, k)
        if prev is not None:
            for blk in prev.blocks:
                assert sum(set(blk) <= set(b) for b in part.blocks) == 1
        prev = part
        assert set(vertex_set(dm, s, k + 1).members) <= set(vertex_set(dm, s, k).members)
        # lowering k coarsens: each block at k+1 sits inside one block at k
        finer, coarser = components_at(dm, s, k + 1), components_at(dm, s, k)
        for blk in finer.blocks:
            assert sum(set(blk) <= set(b) for b in coarser.blocks) == 1


@given(st.integers(0, 100_000))
@settings(max_examples=30, deadline=None)
def test_relabeling_invariance(seed):
    dm = dm_of(seed, n_max=12)
    perm = np.random.default_rng(seed).permutation(dm.n)
    pdm = dm.restrict(perm)
    for s in phase_change_scales(dm).scales[::3]:
        orig = {frozenset(b) for b in components_at(dm, s, 1).blocks}
        permuted = {frozenset(int(perm[v]) for v in b) for b in components_at(pdm, s, 1).blocks}
        assert orig == permuted
