# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernel. Same contract as ``_kernels_py.profile_pair_codes``."""

import numpy as np
cimport numpy as cnp

ctypedef unsigned long long u64

BACKEND = "cython"

cdef int MAXN = 7


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int popcount(u64 v) nogil:
    return __builtin_popcountll(v)


def profile_pair_codes(geq_rows, ranks_in, pairs=None):
    cdef int n = len(geq_rows)
    if n > MAXN:
        raise ValueError("kernel supports at most 7 elements")
    cdef cnp.ndarray[cnp.int32_t, ndim=2] ranks = np.ascontiguousarray(ranks_in, dtype=np.int32)
    cdef int m = ranks.shape[0]
    cdef u64 geq[7]
    cdef int order[7]
    cdef int a, b, i, j, k, x, y, npairs = 0
    cdef int px[32]
    cdef int py[32]
    for a in range(n):
        geq[a] = <u64>int(geq_rows[a])
    for x in range(n):
        for y in range(n):
            if x != y and (geq[x] >> y) & 1:
                px[npairs] = x
                py[npairs] = y
                npairs += 1
    # insertion sort by number of elements below
    cdef int t, key
    for a in range(n):
        order[a] = a
    for a in range(1, n):
        key = order[a]
        t = a - 1
        while t >= 0 and popcount(geq[order[t]]) > popcount(geq[key]):
            order[t + 1] = order[t]
            t -= 1
        order[t + 1] = key

    cdef cnp.ndarray[u64, ndim=2] sw = np.zeros((m, n), dtype=np.uint64)
    cdef cnp.ndarray[u64, ndim=2] ss = np.zeros((m, n), dtype=np.uint64)
    cdef cnp.ndarray[u64, ndim=2] uw = np.zeros((m, n), dtype=np.uint64)
    cdef cnp.ndarray[u64, ndim=2] us = np.zeros((m, n), dtype=np.uint64)
    for i in range(m):
        for a in range(n):
            for b in range(n):
                if ranks[i, a] <= ranks[i, b]:
                    uw[i, a] |= (<u64>1) << b
                    if ranks[i, a] < ranks[i, b]:
                        us[i, a] |= (<u64>1) << b
            sw[i, a] = geq[a] & uw[i, a]
            ss[i, a] = geq[a] & us[i, a]

    cdef Py_ssize_t q, npq
    cdef cnp.ndarray[cnp.int64_t, ndim=2] plist
    full = pairs is None
    if full:
        core_arr = np.zeros((m, m), dtype=np.int64)
        nw_arr = np.zeros((m, m), dtype=np.int64)
        ns_arr = np.zeros((m, m), dtype=np.int64)
        plist = np.array([(i, j) for i in range(m) for j in range(i, m)], dtype=np.int64).reshape(-1, 2)
    else:
        plist = np.ascontiguousarray(np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
        core_arr = np.zeros(plist.shape[0], dtype=np.int64)
        nw_arr = np.zeros(plist.shape[0], dtype=np.int64)
        ns_arr = np.zeros(plist.shape[0], dtype=np.int64)
    out_code = np.zeros(plist.shape[0], dtype=np.uint64)
    out_nw = np.zeros(plist.shape[0], dtype=np.uint64)
    out_ns = np.zeros(plist.shape[0], dtype=np.uint64)
    cdef u64[:] oc = out_code
    cdef u64[:] onw = out_nw
    cdef u64[:] ons = out_ns
    cdef u64 reach[7]
    cdef u64 sreach[7]
    cdef u64 e, s, acc, sacc, mask, code, nwv, nsv
    npq = plist.shape[0]
    with nogil:
        for q in range(npq):
            i = <int>plist[q, 0]
            j = <int>plist[q, 1]
            for t in range(n):
                a = order[t]
                e = (sw[i, a] | sw[j, a]) & ~((<u64>1) << a)
                s = ss[i, a] | ss[j, a]
                acc = (<u64>1) << a
                sacc = 0
                mask = e
                while mask:
                    b = __builtin_ctzll(mask)
                    mask &= mask - 1
                    acc |= reach[b]
                    sacc |= sreach[b]
                mask = s
                while mask:
                    b = __builtin_ctzll(mask)
                    mask &= mask - 1
                    sacc |= reach[b]
                reach[a] = acc
                sreach[a] = sacc
            code = 0
            for k in range(npairs):
                if (reach[px[k]] >> py[k]) & 1:
                    code |= (<u64>1) << (2 * k)
                if not ((sreach[px[k]] >> py[k]) & 1):
                    code |= (<u64>1) << (2 * k + 1)
            nwv = 0
            nsv = 0
            for x in range(n):
                mask = uw[i, x] & uw[j, x] & ~((<u64>1) << x)
                while mask:
                    y = __builtin_ctzll(mask)
                    mask &= mask - 1
                    if not ((sreach[y] >> x) & 1):
                        nwv |= (<u64>1) << (x * n + y)
                mask = us[i, x] & us[j, x]
                while mask:
                    y = __builtin_ctzll(mask)
                    mask &= mask - 1
                    if not ((reach[y] >> x) & 1):
                        nsv |= (<u64>1) << (x * n + y)
            oc[q] = code
            onw[q] = nwv
            ons[q] = nsv
    codes = out_code.astype(np.int64)
    nws = out_nw.astype(np.int64)
    nss = out_ns.astype(np.int64)
    if not full:
        return codes, nws, nss
    ii = plist[:, 0]
    jj = plist[:, 1]
    for arr, vals in ((core_arr, codes), (nw_arr, nws), (ns_arr, nss)):
        arr[ii, jj] = vals
        arr[jj, ii] = vals
    return core_arr, nw_arr, ns_arr
