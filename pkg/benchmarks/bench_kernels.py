"""Compare the compiled kernels with their uncompiled fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each row times one kernel on one input size and checks that every path
returns the same answer.  The speedup column is the slowest fallback over
numba.  The first numba call is made before timing, so
compile (or cache load) cost is excluded.
"""

import argparse
import json
import time

import numpy as np

from branchstab import _kernels as K
from branchstab.metric import distance_matrix, phase_change_scales
from branchstab.fuzz import random_cloud


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def sweep_cases(rng):
    for n in (40, 100, 200):
        dm = distance_matrix(random_cloud(rng, n, 3, kind="blobs"))
        scales = phase_change_scales(dm).scales
        for k in (0, 3):
            yield f"sweep_labels n={n} k={k}", dm.entries, scales, k


def config_cases(rng):
    for nx, ny, size in ((10, 12, 3), (14, 16, 4), (18, 20, 4), (20, 24, 5)):
        cross = rng.uniform(0, 10, size=(nx, ny))
        yield f"directed_config {nx}x{ny} size={size}", cross, size


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    rows = []

    for name, dm, scales, k in sweep_cases(rng):
        K.sweep_labels_numba(dm, scales[:2], k)  # warm
        t_nb, a = best_of(lambda: K.sweep_labels_numba(dm, scales, k), args.repeat)
        t_np, b = best_of(lambda: K.sweep_labels_numpy(dm, scales, k), 1)
        t_py, c = best_of(lambda: K.sweep_labels_loop(dm, scales, k), 1)
        rows.append((name, t_nb, t_np, t_py, bool(np.array_equal(a, b) and np.array_equal(a, c))))

    for name, cross, size in config_cases(rng):
        K.directed_config_numba(cross[:3, :4], 1)  # warm
        t_nb, a = best_of(lambda: K.directed_config_numba(cross, size), args.repeat)
        t_py, b = best_of(lambda: K.directed_config_loop(cross, size), 1)
        same = a[0] == b[0] and np.array_equal(a[1], b[1])
        rows.append((name, t_nb, None, t_py, bool(same)))

    fmt = lambda t: f"{t:>11.4f}" if t is not None else f"{'-':>11}"  # noqa: E731
    print(f"{'kernel':<34}{'numba s':>11}{'numpy s':>11}{'loop s':>11}{'speedup':>10}  agree")
    for name, t_nb, t_np, t_py, same in rows:
        slowest = max(t for t in (t_np, t_py) if t is not None)
        print(f"{name:<34}{fmt(t_nb)}{fmt(t_np)}{fmt(t_py)}{slowest / t_nb:>9.0f}x  {same}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(
                [dict(kernel=r[0], numba=r[1], numpy=r[2], loop=r[3], agree=r[4]) for r in rows],
                fh,
                indent=2,
            )
    return 0 if all(r[4] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
