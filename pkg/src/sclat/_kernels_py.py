"""Pure-Python sweep kernel. Mirrors ``_kernels.pyx`` exactly.

``profile_pair_codes`` treats every unordered pair (i, j) of rank vectors
as a two-member profile and returns three symmetric int64 matrices (or,
given an explicit ``pairs`` list, three int64 vectors in that order):

core[i, j]
    Core relation on comparable pairs. For the k-th strict pair (x, y)
    of the poset (row-major), bit 2k says a chain reaches y from x and
    bit 2k+1 says no strict chain does.
need_weak[i, j], need_strict[i, j]
    Conditional-unanimity demands. Bit ``x*n + y`` of ``need_weak`` is set
    when both members rank x weakly over y and no strict chain runs from
    y to x; ``need_strict`` likewise with strict unanimity and no chain at all.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def profile_pair_codes(geq_rows, ranks, pairs=None):
    n = len(geq_rows)
    ranks = [tuple(int(v) for v in r) for r in ranks]
    m = len(ranks)
    strict_pairs = [(x, y) for x in range(n) for y in _bits(geq_rows[x]) if y != x]
    # bottom-up order: fewer elements below means lower in the poset
    order = sorted(range(n), key=lambda a: bin(geq_rows[a]).count("1"))

    step_w, step_s, unan_w, unan_s = [], [], [], []
    for r in ranks:
        sw = [0] * n
        ss = [0] * n
        uw = [0] * n
        us = [0] * n
        for a in range(n):
            for b in range(n):
                if r[a] <= r[b]:
                    uw[a] |= 1 << b
                    if r[a] < r[b]:
                        us[a] |= 1 << b
            sw[a] = geq_rows[a] & uw[a]
            ss[a] = geq_rows[a] & us[a]
        step_w.append(sw)
        step_s.append(ss)
        unan_w.append(uw)
        unan_s.append(us)

    full = pairs is None
    if full:
        pairs = [(i, j) for i in range(m) for j in range(i, m)]
    codes, nws, nss = [], [], []
    reach = [0] * n
    sreach = [0] * n
    for i, j in pairs:
        wi, si, uwi, usi = step_w[i], step_s[i], unan_w[i], unan_s[i]
        wj, sj, uwj, usj = step_w[j], step_s[j], unan_w[j], unan_s[j]
        for a in order:
            e = (wi[a] | wj[a]) & ~(1 << a)
            s = (si[a] | sj[a])
            acc = 1 << a
            sacc = 0
            for b in _bits(e):
                acc |= reach[b]
                sacc |= sreach[b]
            for b in _bits(s):
                sacc |= reach[b]
            reach[a] = acc
            sreach[a] = sacc
        code = 0
        for k, (x, y) in enumerate(strict_pairs):
            if reach[x] >> y & 1:
                code |= 1 << (2 * k)
            if not sreach[x] >> y & 1:
                code |= 1 << (2 * k + 1)
        nw = 0
        ns = 0
        for x in range(n):
            for y in _bits(uwi[x] & uwj[x] & ~(1 << x)):
                if not sreach[y] >> x & 1:
                    nw |= 1 << (x * n + y)
            for y in _bits(usi[x] & usj[x]):
                if not reach[y] >> x & 1:
                    ns |= 1 << (x * n + y)
        codes.append(code)
        nws.append(nw)
        nss.append(ns)
    codes = np.array(codes, dtype=np.int64)
    nws = np.array(nws, dtype=np.int64)
    nss = np.array(nss, dtype=np.int64)
    if not full:
        return codes, nws, nss
    out = []
    idx = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    for vals in (codes, nws, nss):
        arr = np.zeros((m, m), dtype=np.int64)
        arr[idx[:, 0], idx[:, 1]] = vals
        arr[idx[:, 1], idx[:, 0]] = vals
        out.append(arr)
    return tuple(out)
