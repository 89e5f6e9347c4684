"""Pure-Python worklist kernel for equitable ordered-partition refinement.

This is the fallback twin of the compiled kernel in ``_wlcore.pyx``; both
implement the identical algorithm and must return identical results.  The
ordered partition is encoded as ``elems`` (vertices grouped by cell, cells
contiguous and in order) plus ``cut`` (``cut[p] = 1`` iff position ``p``
starts a cell, with ``cut[n]`` as sentinel).

The worklist holds cell start positions.  Processing a refiner cell counts
its neighbors; every affected cell is split into fragments ordered by
ascending count, keeping the previous relative order inside each fragment.
A fragment inherits the parent's queue membership at the parent's start
position; otherwise all fragments but the largest are enqueued.  The
result is the coarsest equitable refinement of the input partition, with a
cell order that depends only on the input order and the graph structure.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def refine_ordered(indptr, indices, elems, cut, active):
    n = len(elems)
    if n == 0:
        return np.zeros(0, dtype=np.int32), np.ones(1, dtype=np.uint8)
    indptr = list(indptr)
    indices = list(indices)
    elems = list(elems)
    cut_l = list(cut)

    pos = [0] * n
    for p, v in enumerate(elems):
        pos[v] = p
    cstart = [0] * n  # vertex -> start position of its cell
    size_at = [0] * n  # start position -> cell size
    start = 0
    for p in range(1, n + 1):
        if p == n or cut_l[p]:
            for q in range(start, p):
                cstart[elems[q]] = start
            size_at[start] = p - start
            start = p

    queue = deque()
    inq = [False] * n
    for s in active:
        s = int(s)
        if not inq[s]:
            inq[s] = True
            queue.append(s)

    cnt = [0] * n
    aff_flag = [False] * n

    while queue:
        s = queue.popleft()
        inq[s] = False
        refiner = elems[s : s + size_at[s]]
        touched = []
        for v in refiner:
            for ui in range(indptr[v], indptr[v + 1]):
                u = indices[ui]
                if cnt[u] == 0:
                    touched.append(u)
                cnt[u] += 1
        affected = []
        for u in touched:
            a = cstart[u]
            if not aff_flag[a]:
                aff_flag[a] = True
                affected.append(a)
        affected.sort()
        for a in affected:
            aff_flag[a] = False
            z = size_at[a]
            if z == 1:
                continue
            seg = elems[a : a + z]
            buckets = {}
            for v in seg:
                buckets.setdefault(cnt[v], []).append(v)
            if len(buckets) == 1:
                continue
            was_inq = inq[a]
            offs = a
            frags = []
            for val in sorted(buckets):
                bucket = buckets[val]
                frags.append((offs, len(bucket)))
                for v in bucket:
                    elems[offs] = v
                    pos[v] = offs
                    offs += 1
            for fs, fz in frags:
                size_at[fs] = fz
                cut_l[fs] = 1
                for p in range(fs, fs + fz):
                    cstart[elems[p]] = fs
            if was_inq:
                for fs, _ in frags[1:]:
                    if not inq[fs]:
                        inq[fs] = True
                        queue.append(fs)
            else:
                big = max(frags, key=lambda t: (t[1], -t[0]))[0]
                for fs, _ in frags:
                    if fs != big and not inq[fs]:
                        inq[fs] = True
                        queue.append(fs)
        for u in touched:
            cnt[u] = 0

    return np.asarray(elems, dtype=np.int32), np.asarray(cut_l, dtype=np.uint8)
