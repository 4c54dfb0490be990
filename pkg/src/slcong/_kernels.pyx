# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see _kernels_py.py for the reference implementations."""

from libc.stdlib cimport free, malloc


def scan_join_closed(int nbits, pair_masks, join_masks):
    cdef int t = len(pair_masks)
    cdef unsigned long long *pm = <unsigned long long *> malloc((t + 1) * sizeof(unsigned long long))
    cdef unsigned long long *jm = <unsigned long long *> malloc((t + 1) * sizeof(unsigned long long))
    if pm == NULL or jm == NULL:
        free(pm)
        free(jm)
        raise MemoryError()
    cdef int i
    for i in range(t):
        pm[i] = pair_masks[i]
        jm[i] = join_masks[i]
    cdef unsigned long long mask, end = 1ULL << nbits
    cdef long long count = 0
    cdef bint ok
    for mask in range(end):
        ok = True
        for i in range(t):
            if mask & pm[i] == pm[i] and not mask & jm[i]:
                ok = False
                break
        if ok:
            count += 1
    free(pm)
    free(jm)
    return count


def list_join_closed(int nbits, pair_masks, join_masks):
    cdef int t = len(pair_masks)
    cdef unsigned long long *pm = <unsigned long long *> malloc((t + 1) * sizeof(unsigned long long))
    cdef unsigned long long *jm = <unsigned long long *> malloc((t + 1) * sizeof(unsigned long long))
    if pm == NULL or jm == NULL:
        free(pm)
        free(jm)
        raise MemoryError()
    cdef int i
    for i in range(t):
        pm[i] = pair_masks[i]
        jm[i] = join_masks[i]
    cdef unsigned long long mask, end = 1ULL << nbits
    cdef bint ok
    out = []
    for mask in range(end):
        ok = True
        for i in range(t):
            if mask & pm[i] == pm[i] and not mask & jm[i]:
                ok = False
                break
        if ok:
            out.append(mask)
    free(pm)
    free(jm)
    return out


def op_compatible(int n, op_flat, block_id):
    cdef int *op = <int *> malloc(n * n * sizeof(int))
    cdef int *blk = <int *> malloc(n * sizeof(int))
    cdef int *rep = <int *> malloc(n * sizeof(int))
    if op == NULL or blk == NULL or rep == NULL:
        free(op)
        free(blk)
        free(rep)
        raise MemoryError()
    cdef int i, x, z, b, r
    for i in range(n * n):
        op[i] = op_flat[i]
    for i in range(n):
        blk[i] = block_id[i]
        rep[i] = -1
    cdef bint ok = True
    for x in range(n):
        b = blk[x]
        r = rep[b]
        if r < 0:
            rep[b] = x
            continue
        for z in range(n):
            if blk[op[x * n + z]] != blk[op[r * n + z]]:
                ok = False
                break
        if not ok:
            break
    free(op)
    free(blk)
    free(rep)
    return ok


def congruence_closure(int n, meet_flat, pairs_flat):
    cdef int npairs = len(pairs_flat) // 2
    # every successful union enqueues n pairs and there are at most n-1 unions
    cdef int cap = 2 * (npairs + n * n + n)
    cdef int *meet = <int *> malloc(n * n * sizeof(int))
    cdef int *parent = <int *> malloc(n * sizeof(int))
    cdef int *queue = <int *> malloc(cap * sizeof(int))
    cdef int *ids = <int *> malloc(n * sizeof(int))
    if meet == NULL or parent == NULL or queue == NULL or ids == NULL:
        free(meet)
        free(parent)
        free(queue)
        free(ids)
        raise MemoryError()
    cdef int i, x, y, rx, ry, z, a, b, top, nid
    for i in range(n * n):
        meet[i] = meet_flat[i]
    for i in range(n):
        parent[i] = i
        ids[i] = -1
    top = 0
    for i in range(2 * npairs):
        queue[top] = pairs_flat[i]
        top += 1
    while top > 0:
        top -= 1
        y = queue[top]
        top -= 1
        x = queue[top]
        rx = x
        while parent[rx] != rx:
            parent[rx] = parent[parent[rx]]
            rx = parent[rx]
        ry = y
        while parent[ry] != ry:
            parent[ry] = parent[parent[ry]]
            ry = parent[ry]
        if rx == ry:
            continue
        parent[ry] = rx
        for z in range(n):
            a = meet[x * n + z]
            b = meet[y * n + z]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                queue[top] = a
                top += 1
                queue[top] = b
                top += 1
    out = [0] * n
    nid = 0
    for i in range(n):
        x = i
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        if ids[x] < 0:
            ids[x] = nid
            nid += 1
        out[i] = ids[x]
    free(meet)
    free(parent)
    free(queue)
    free(ids)
    return out
