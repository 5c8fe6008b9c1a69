import os
import random
import subprocess
import sys

import numpy as np
import pytest

from sclat import _kernels_py
from sclat.chains import build_chain_digraph, reach_rows
from sclat.kernels import BACKEND
from sclat.lattice import core_relation
from sclat.oracle import enumerate_posets
from sclat.preference import Profile, WeakOrder, weak_order_ranks
from sclat.sweeps import order_codes

try:
    from sclat import _kernels
except ImportError:  # extension not built
    _kernels = None

compiled = pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")


def _expected(p, a, b):
    """Kernel outputs recomputed from the library's core relation and chain reachability."""
    P = Profile((WeakOrder(p.elements, tuple(a)), WeakOrder(p.elements, tuple(b))))
    rel = core_relation(P, p).relation
    code = 0
    for k, (x, y) in enumerate(p.strict_pairs()):
        code |= int(rel.has(x, y)) << (2 * k)
        code |= int(rel.has(y, x)) << (2 * k + 1)
    weak, strict = reach_rows(build_chain_digraph(P, p))
    n = p.n
    nw = ns = 0
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if a[x] <= a[y] and b[x] <= b[y] and not strict[y] >> x & 1:
                nw |= 1 << (x * n + y)
            if a[x] < a[y] and b[x] < b[y] and not weak[y] >> x & 1:
                ns |= 1 << (x * n + y)
    return code, nw, ns


@pytest.mark.parametrize("n", [1, 2, 3])
def test_python_kernel_matches_library(n):
    ranks = np.array(weak_order_ranks(n))
    for p in enumerate_posets(n):
        core, nw, ns = _kernels_py.profile_pair_codes(p.rows, ranks)
        for i in range(len(ranks)):
            for j in range(len(ranks)):
                assert (core[i, j], nw[i, j], ns[i, j]) == _expected(p, ranks[i], ranks[j])


def test_python_kernel_matches_library_four_sampled():
    rng = random.Random(1)
    ranks = np.array(weak_order_ranks(4))
    for p in list(enumerate_posets(4))[::3]:
        pairs = [(rng.randrange(75), rng.randrange(75)) for _ in range(10)]
        core, nw, ns = _kernels_py.profile_pair_codes(p.rows, ranks, pairs)
        for k, (i, j) in enumerate(pairs):
            assert (core[k], nw[k], ns[k]) == _expected(p, ranks[i], ranks[j])


@compiled
@pytest.mark.parametrize("n", [2, 3, 4])
def test_compiled_matches_python(n):
    ranks = np.array(weak_order_ranks(n), dtype=np.int64)
    posets = list(enumerate_posets(n))
    if n == 4:
        posets = posets[::5]
    for p in posets:
        for got, want in zip(_kernels.profile_pair_codes(p.rows, ranks), _kernels_py.profile_pair_codes(p.rows, ranks)):
            assert np.array_equal(got, want)


@compiled
def test_compiled_pair_list_matches_python():
    ranks = np.array(weak_order_ranks(5), dtype=np.int64)
    rng = random.Random(5)
    for p in list(enumerate_posets(5))[::211]:
        pairs = np.array([(rng.randrange(541), rng.randrange(541)) for _ in range(50)], dtype=np.int64)
        for got, want in zip(_kernels.profile_pair_codes(p.rows, ranks, pairs), _kernels_py.profile_pair_codes(p.rows, ranks, pairs)):
            assert np.array_equal(got, want)


def test_order_codes_match_layout():
    ranks = np.array(weak_order_ranks(3))
    for p in enumerate_posets(3):
        codes = order_codes(p, ranks)
        for c, r in zip(codes, ranks):
            for k, (x, y) in enumerate(p.strict_pairs()):
                assert (int(c) >> (2 * k) & 1) == (r[x] <= r[y])
                assert (int(c) >> (2 * k + 1) & 1) == (r[y] <= r[x])


def test_backend_reported():
    assert BACKEND in ("cython", "python")
    if _kernels is not None:
        assert BACKEND == "cython"


def test_fallback_forced_by_environment():
    env = dict(os.environ, SCLAT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import sclat; print(sclat.BACKEND)"], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
