"""Pure-Python reference implementations of the hot kernels.

Same contracts as the compiled module; used as the import-time fallback
and as the baseline in benchmarks and equivalence tests.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "pure"


def union_labels(count: int, pairs_a, pairs_b) -> np.ndarray:
    """Connected-component labels after uniting pairs (a[i], b[i]).

    Labels are dense ints numbered by first occurrence scanning items in
    ascending order, so the output is deterministic.
    """
    parent = list(range(count))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(np.asarray(pairs_a).tolist(), np.asarray(pairs_b).tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    labels = np.empty(count, dtype=np.int64)
    seen: dict[int, int] = {}
    for i in range(count):
        root = find(i)
        if root not in seen:
            seen[root] = len(seen)
        labels[i] = seen[root]
    return labels


def noncorner_scan(hyp, nparams: int, nc_a, nc_b) -> np.ndarray:
    """First witness per hyperplane pair met by a non-corner edge pair.

    hyp[f * nparams + s] is the hyperplane label of the directed edge
    (forest f, parameter s); (nc_a[i], nc_b[i]) runs over the forest-index
    pairs that share a start vertex without spanning a square corner.
    Returns rows (h1, h2, s, f1, f2) with h1 <= h2, sorted by (h1, h2);
    the witness is the lexicographically least (s, f1, f2).
    """
    hyp_list = np.asarray(hyp).tolist()
    a_list = np.asarray(nc_a).tolist()
    b_list = np.asarray(nc_b).tolist()
    first: dict[tuple[int, int], tuple[int, int, int]] = {}
    for s in range(nparams):
        for f1, f2 in zip(a_list, b_list):
            h1 = hyp_list[f1 * nparams + s]
            h2 = hyp_list[f2 * nparams + s]
            if h2 < h1:
                h1, h2 = h2, h1
            key = (h1, h2)
            if key not in first:
                first[key] = (s, f1, f2)
    rows = [(h1, h2, s, f1, f2) for (h1, h2), (s, f1, f2) in first.items()]
    rows.sort()
    return np.array(rows, dtype=np.int64).reshape(-1, 5)
