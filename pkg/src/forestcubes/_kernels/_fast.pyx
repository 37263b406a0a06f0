# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see _purepy for the contracts)."""

from libc.stdlib cimport free, malloc

import numpy as np

IMPLEMENTATION = "compiled"


cdef long long _find(long long* parent, long long x) nogil:
    cdef long long root = x
    cdef long long nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def union_labels(long long count, pairs_a, pairs_b):
    cdef long long[::1] a = np.ascontiguousarray(pairs_a, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(pairs_b, dtype=np.int64)
    if a.shape[0] != b.shape[0]:
        raise ValueError("pair arrays must have equal length")
    cdef long long npairs = a.shape[0]
    cdef long long* parent = <long long*> malloc(count * sizeof(long long))
    if parent == NULL:
        raise MemoryError()
    cdef long long i, ra, rb, root, nclass
    labels_arr = np.empty(count, dtype=np.int64)
    cdef long long[::1] labels = labels_arr
    try:
        for i in range(count):
            parent[i] = i
        with nogil:
            for i in range(npairs):
                ra = _find(parent, a[i])
                rb = _find(parent, b[i])
                if ra != rb:
                    parent[rb] = ra
            nclass = 0
            for i in range(count):
                labels[i] = -1
            for i in range(count):
                root = _find(parent, i)
                if labels[root] < 0:
                    labels[root] = nclass
                    nclass += 1
            for i in range(count):
                root = _find(parent, i)
                if root != i:
                    labels[i] = labels[root]
        # first pass stored class ids on roots only; roots already correct
        return labels_arr
    finally:
        free(parent)


def noncorner_scan(hyp, long long nparams, nc_a, nc_b):
    cdef long long[::1] h = np.ascontiguousarray(hyp, dtype=np.int64)
    cdef long long[::1] a = np.ascontiguousarray(nc_a, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(nc_b, dtype=np.int64)
    if a.shape[0] != b.shape[0]:
        raise ValueError("pair arrays must have equal length")
    cdef long long nclasses = 0
    cdef long long i
    for i in range(h.shape[0]):
        if h[i] >= nclasses:
            nclasses = h[i] + 1
    if nclasses > 16384:
        raise ValueError("too many hyperplane classes for the matrix scan")

    seen_arr = np.zeros(nclasses * nclasses, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef long long npairs = a.shape[0]
    cdef long long s, j, f1, f2, h1, h2, tmp, nfound = 0
    rows = []
    for s in range(nparams):
        for j in range(npairs):
            f1 = a[j]
            f2 = b[j]
            h1 = h[f1 * nparams + s]
            h2 = h[f2 * nparams + s]
            if h2 < h1:
                tmp = h1
                h1 = h2
                h2 = tmp
            if not seen[h1 * nclasses + h2]:
                seen[h1 * nclasses + h2] = 1
                rows.append((h1, h2, s, f1, f2))
                nfound += 1
    rows.sort()
    return np.array(rows, dtype=np.int64).reshape(-1, 5)
