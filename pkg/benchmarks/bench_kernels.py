"""Time the compiled and pure-Python sweep kernels on the same inputs.

Usage: python3 benchmarks/bench_kernels.py [--n 4] [--posets 20] [--repeat 3]
"""

import argparse
import random
import time

import numpy as np

from sclat import _kernels_py
from sclat.oracle import poset_rows
from sclat.preference import weak_order_ranks


def _compiled():
    try:
        from sclat import _kernels
    except ImportError:
        return None
    return _kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--posets", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    ranks = np.array(weak_order_ranks(args.n), dtype=np.int64)
    m = len(ranks)
    iu, ju = np.triu_indices(m)
    pairs = np.stack([iu, ju], axis=1).astype(np.int64)
    rows = poset_rows(args.n)
    chosen = random.Random(args.seed).sample(rows, min(args.posets, len(rows)))

    compiled = _compiled()
    print(f"n={args.n}  weak orders={m}  profiles per poset={len(pairs)}  posets={len(chosen)}")
    t_py = t_c = 0.0
    for r in chosen:
        dt, ref = _time(lambda: _kernels_py.profile_pair_codes(r, ranks, pairs), args.repeat)
        t_py += dt
        if compiled is not None:
            dt, got = _time(lambda: compiled.profile_pair_codes(r, ranks, pairs), args.repeat)
            t_c += dt
            assert all(np.array_equal(a, b) for a, b in zip(ref, got)), "backends disagree"
    print(f"python   {t_py:8.3f} s")
    if compiled is None:
        print("cython   not built")
        return
    print(f"cython   {t_c:8.3f} s")
    print(f"speedup  {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
