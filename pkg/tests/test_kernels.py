import numpy as np
import pytest

from branchstab import _kernels as K

from instances import dm_of


@pytest.mark.parametrize("seed", range(30))
def test_sweep_paths_agree(seed):
    dm = dm_of(seed, n_max=25).entries
    scales = np.unique(dm)
    for k in range(4):
        ref = K.sweep_labels_numpy(dm, scales, k)
        assert np.array_equal(K.sweep_labels_numba(dm, scales, k), ref)
        assert np.array_equal(K.sweep_labels_loop(dm, scales, k), ref)


@pytest.mark.parametrize("seed", range(30))
def test_bottleneck_paths_agree(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 5))
    cross = rng.integers(0, 6, size=(m, int(rng.integers(m, 9)))).astype(float)
    v1, a1 = K.bottleneck_assign_numba(cross)
    v2, a2 = K.bottleneck_assign_loop(cross)
    assert v1 == v2 and np.array_equal(a1, a2)
    rows = sorted(int(r) for r in a1 if r >= 0)
    assert rows == list(range(m))
    assert max(cross[r, c] for c, r in enumerate(a1) if r >= 0) == v1


@pytest.mark.parametrize("seed", range(20))
def test_directed_config_paths_agree(seed):
    rng = np.random.default_rng(seed)
    cross = rng.uniform(0, 4, size=(int(rng.integers(3, 9)), int(rng.integers(3, 9))))
    size = int(rng.integers(1, min(cross.shape) + 1))
    assert K.directed_config_numba(cross, size)[0] == K.directed_config_loop(cross, size)[0]


def test_activation_scales():
    dm = np.abs(np.subtract.outer([0.0, 1, 3], [0.0, 1, 3]))
    assert K.activation_scales(dm, 0).tolist() == [0, 0, 0]
    assert K.activation_scales(dm, 1).tolist() == [1, 1, 2]
    assert np.isinf(K.activation_scales(dm, 3)).all()
