# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled worklist kernel for equitable ordered-partition refinement.

Twin of ``_wlpure.refine_ordered``: same encoding, same splitting rules,
same queue discipline, so both backends return identical arrays.  See the
pure module for the algorithm description.
"""

import numpy as np


def refine_ordered(indptr_arr, indices_arr, elems_arr, cut_arr, active_arr):
    cdef int n = len(elems_arr)
    if n == 0:
        return np.zeros(0, dtype=np.int32), np.ones(1, dtype=np.uint8)

    cdef int[:] indptr = np.ascontiguousarray(indptr_arr, dtype=np.int32)
    cdef int[:] indices = np.ascontiguousarray(indices_arr, dtype=np.int32)

    elems_np = np.array(elems_arr, dtype=np.int32, copy=True)
    cut_np = np.array(cut_arr, dtype=np.uint8, copy=True)
    cdef int[:] elems = elems_np
    cdef unsigned char[:] cut = cut_np

    pos_np = np.zeros(n, dtype=np.int32)
    cstart_np = np.zeros(n, dtype=np.int32)
    size_np = np.zeros(n, dtype=np.int32)
    cnt_np = np.zeros(n, dtype=np.int32)
    touched_np = np.zeros(n, dtype=np.int32)
    aff_np = np.zeros(n, dtype=np.int32)
    affflag_np = np.zeros(n, dtype=np.uint8)
    inq_np = np.zeros(n, dtype=np.uint8)
    refiner_np = np.zeros(n, dtype=np.int32)
    seg_np = np.zeros(n, dtype=np.int32)
    segcnt_np = np.zeros(n, dtype=np.int32)
    order_np = np.zeros(n, dtype=np.int64)
    fragstart_np = np.zeros(n + 1, dtype=np.int32)
    # ring buffer: at most one fragment enqueue per created cell plus seeds
    cdef int qcap = 4 * n + 8
    queue_np = np.zeros(qcap, dtype=np.int32)

    cdef int[:] pos = pos_np
    cdef int[:] cstart = cstart_np
    cdef int[:] size_at = size_np
    cdef int[:] cnt = cnt_np
    cdef int[:] touched = touched_np
    cdef int[:] affected = aff_np
    cdef unsigned char[:] aff_flag = affflag_np
    cdef unsigned char[:] inq = inq_np
    cdef int[:] refiner = refiner_np
    cdef int[:] seg = seg_np
    cdef int[:] segcnt = segcnt_np
    cdef long long[:] order = order_np
    cdef int[:] fragstart = fragstart_np
    cdef int[:] queue = queue_np

    cdef int p, q, v, u, ui, s, a, z, i, start
    cdef int ntouched, naffected, rsize
    cdef int qhead = 0, qtail = 0
    cdef int was_inq, offs, nfrags, big, bigsize, fs, fz, val, prev

    for p in range(n):
        pos[elems[p]] = p
    start = 0
    for p in range(1, n + 1):
        if p == n or cut[p]:
            for q in range(start, p):
                cstart[elems[q]] = start
            size_at[start] = p - start
            start = p

    for i in range(len(active_arr)):
        s = active_arr[i]
        if not inq[s]:
            inq[s] = 1
            queue[qtail % qcap] = s
            qtail += 1

    while qhead != qtail:
        s = queue[qhead % qcap]
        qhead += 1
        inq[s] = 0
        rsize = size_at[s]
        for i in range(rsize):
            refiner[i] = elems[s + i]
        ntouched = 0
        for i in range(rsize):
            v = refiner[i]
            for ui in range(indptr[v], indptr[v + 1]):
                u = indices[ui]
                if cnt[u] == 0:
                    touched[ntouched] = u
                    ntouched += 1
                cnt[u] += 1
        naffected = 0
        for i in range(ntouched):
            a = cstart[touched[i]]
            if not aff_flag[a]:
                aff_flag[a] = 1
                affected[naffected] = a
                naffected += 1
        aff_np[:naffected].sort()
        for i in range(naffected):
            a = affected[i]
            aff_flag[a] = 0
            z = size_at[a]
            if z == 1:
                continue
            # stable sort of the segment by count value: key = cnt * n + offset
            for q in range(z):
                v = elems[a + q]
                seg[q] = v
                order[q] = (<long long> cnt[v]) * n + q
            order_np[:z].sort()
            if order[0] // n == order[z - 1] // n:
                continue
            was_inq = inq[a]
            nfrags = 0
            prev = -1
            for q in range(z):
                val = <int> (order[q] // n)
                v = seg[<int> (order[q] % n)]
                if val != prev:
                    fragstart[nfrags] = a + q
                    nfrags += 1
                    prev = val
                elems[a + q] = v
                pos[v] = a + q
            fragstart[nfrags] = a + z
            big = fragstart[0]
            bigsize = 0
            for q in range(nfrags):
                fs = fragstart[q]
                fz = fragstart[q + 1] - fs
                size_at[fs] = fz
                cut[fs] = 1
                for p in range(fs, fs + fz):
                    cstart[elems[p]] = fs
                if fz > bigsize:
                    bigsize = fz
                    big = fs
            for q in range(nfrags):
                fs = fragstart[q]
                if was_inq:
                    if q == 0:
                        continue
                else:
                    if fs == big:
                        continue
                if not inq[fs]:
                    inq[fs] = 1
                    queue[qtail % qcap] = fs
                    qtail += 1
        for i in range(ntouched):
            cnt[touched[i]] = 0

    return elems_np, cut_np
