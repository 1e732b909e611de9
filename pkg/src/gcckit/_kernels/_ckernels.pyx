# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: initializedcheck=False
# cython: cdivision=True
"""Compiled kernels.

Mirrors `_pykernels` exactly; see that module for the shared contracts.
Both backends must return bit-identical results.
"""

import numpy as np

BACKEND = "cython"


def reach(trans, sources, event_ok, alive=None):
    trans = np.ascontiguousarray(trans, dtype=np.int32)
    cdef Py_ssize_t n = trans.shape[0]
    cdef Py_ssize_t m = trans.shape[1]
    ok_arr = np.ascontiguousarray(np.asarray(event_ok, dtype=np.uint8))
    if alive is None:
        alive_arr = np.ones(n, dtype=np.uint8)
    else:
        alive_arr = np.ascontiguousarray(np.asarray(alive, dtype=np.uint8))
    seen_arr = np.zeros(n, dtype=np.uint8)
    queue_arr = np.empty(n if n > 0 else 1, dtype=np.int32)

    cdef const int[:, ::1] T = trans
    cdef const unsigned char[::1] ok = ok_arr
    cdef const unsigned char[::1] live = alive_arr
    cdef unsigned char[::1] seen = seen_arr
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef int q, t
    cdef Py_ssize_t e

    for s in sources:
        q = s
        if live[q] and not seen[q]:
            seen[q] = 1
            queue[tail] = q
            tail += 1
    while head < tail:
        q = queue[head]
        head += 1
        for e in range(m):
            if ok[e]:
                t = T[q, e]
                if t >= 0 and live[t] and not seen[t]:
                    seen[t] = 1
                    queue[tail] = t
                    tail += 1
    return seen_arr


def coreach(trans, targets, event_ok, alive=None):
    trans = np.ascontiguousarray(trans, dtype=np.int32)
    cdef Py_ssize_t n = trans.shape[0]
    cdef Py_ssize_t m = trans.shape[1]
    ok_arr = np.ascontiguousarray(np.asarray(event_ok, dtype=np.uint8))
    if alive is None:
        alive_arr = np.ones(n, dtype=np.uint8)
    else:
        alive_arr = np.ascontiguousarray(np.asarray(alive, dtype=np.uint8))
    seen_arr = np.zeros(n, dtype=np.uint8)

    cdef const int[:, ::1] T = trans
    cdef const unsigned char[::1] ok = ok_arr
    cdef const unsigned char[::1] live = alive_arr
    cdef unsigned char[::1] seen = seen_arr

    # reverse adjacency restricted to live endpoints and enabled events
    cnt_arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] cnt = cnt_arr
    cdef Py_ssize_t q, e
    cdef int t
    for q in range(n):
        if live[q]:
            for e in range(m):
                if ok[e]:
                    t = T[q, e]
                    if t >= 0 and live[t]:
                        cnt[t + 1] += 1
    for q in range(n):
        cnt[q + 1] += cnt[q]
    rsrc_arr = np.empty(cnt_arr[n] if cnt_arr[n] > 0 else 1, dtype=np.int32)
    fill_arr = np.array(cnt_arr[:-1], dtype=np.int64)
    cdef int[::1] rsrc = rsrc_arr
    cdef long long[::1] fill = fill_arr
    for q in range(n):
        if live[q]:
            for e in range(m):
                if ok[e]:
                    t = T[q, e]
                    if t >= 0 and live[t]:
                        rsrc[fill[t]] = <int> q
                        fill[t] += 1

    queue_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef long long i
    cdef int p
    for s in targets:
        q = s
        if live[q] and not seen[q]:
            seen[q] = 1
            queue[tail] = <int> q
            tail += 1
    while head < tail:
        q = queue[head]
        head += 1
        for i in range(cnt[q], cnt[q + 1]):
            p = rsrc[i]
            if not seen[p]:
                seen[p] = 1
                queue[tail] = p
                tail += 1
    return seen_arr


def product(trans_a, trans_b, init_a, init_b):
    A = np.ascontiguousarray(trans_a, dtype=np.int32)
    B = np.ascontiguousarray(trans_b, dtype=np.int32)
    cdef Py_ssize_t na = A.shape[0]
    cdef Py_ssize_t m = A.shape[1]
    cdef Py_ssize_t nb = B.shape[0]
    index_arr = np.full(na * nb, -1, dtype=np.int32)

    cdef const int[:, ::1] TA = A
    cdef const int[:, ::1] TB = B
    cdef int[::1] index = index_arr

    cdef Py_ssize_t cap = 256
    comp_a_arr = np.empty(cap, dtype=np.int32)
    comp_b_arr = np.empty(cap, dtype=np.int32)
    parent_arr = np.empty(cap, dtype=np.int32)
    pevent_arr = np.empty(cap, dtype=np.int32)
    ptrans_arr = np.empty((cap, m), dtype=np.int32)
    cdef int[::1] comp_a = comp_a_arr
    cdef int[::1] comp_b = comp_b_arr
    cdef int[::1] parent = parent_arr
    cdef int[::1] pevent = pevent_arr
    cdef int[:, ::1] ptrans = ptrans_arr

    cdef Py_ssize_t k = 0, head = 0
    cdef int a, b, ta, tb, idx
    cdef Py_ssize_t e
    cdef long long key

    a = init_a
    b = init_b
    key = (<long long> a) * nb + b
    comp_a[0] = a
    comp_b[0] = b
    parent[0] = -1
    pevent[0] = -1
    index[key] = 0
    k = 1

    while head < k:
        a = comp_a[head]
        b = comp_b[head]
        for e in range(m):
            ta = TA[a, e]
            tb = TB[b, e]
            if ta >= 0 and tb >= 0:
                key = (<long long> ta) * nb + tb
                idx = index[key]
                if idx < 0:
                    if k == cap:
                        cap = cap * 2
                        comp_a_arr = np.concatenate([comp_a_arr, np.empty(cap - k, dtype=np.int32)])
                        comp_b_arr = np.concatenate([comp_b_arr, np.empty(cap - k, dtype=np.int32)])
                        parent_arr = np.concatenate([parent_arr, np.empty(cap - k, dtype=np.int32)])
                        pevent_arr = np.concatenate([pevent_arr, np.empty(cap - k, dtype=np.int32)])
                        ptrans_arr = np.concatenate([ptrans_arr, np.empty((cap - k, m), dtype=np.int32)])
                        comp_a = comp_a_arr
                        comp_b = comp_b_arr
                        parent = parent_arr
                        pevent = pevent_arr
                        ptrans = ptrans_arr
                    idx = <int> k
                    index[key] = idx
                    comp_a[k] = ta
                    comp_b[k] = tb
                    parent[k] = head
                    pevent[k] = <int> e
                    k += 1
                ptrans[head, e] = idx
            else:
                ptrans[head, e] = -1
        head += 1

    return (
        comp_a_arr[:k].copy(),
        comp_b_arr[:k].copy(),
        ptrans_arr[:k].copy(),
        parent_arr[:k].copy(),
        pevent_arr[:k].copy(),
    )


def pair_bfs(trans, obs_ok, init):
    T0 = np.ascontiguousarray(trans, dtype=np.int32)
    cdef Py_ssize_t n = T0.shape[0]
    cdef Py_ssize_t m = T0.shape[1]
    ok_arr = np.ascontiguousarray(np.asarray(obs_ok, dtype=np.uint8))
    index_arr = np.full(n * n, -1, dtype=np.int32)

    cdef const int[:, ::1] T = T0
    cdef const unsigned char[::1] ok = ok_arr
    cdef int[::1] index = index_arr

    cdef Py_ssize_t cap = 256
    left_arr = np.empty(cap, dtype=np.int32)
    right_arr = np.empty(cap, dtype=np.int32)
    parent_arr = np.empty(cap, dtype=np.int32)
    pevent_arr = np.empty(cap, dtype=np.int32)
    pkind_arr = np.empty(cap, dtype=np.int8)
    cdef int[::1] left = left_arr
    cdef int[::1] right = right_arr
    cdef int[::1] parent = parent_arr
    cdef int[::1] pevent = pevent_arr
    cdef signed char[::1] pkind = pkind_arr

    cdef Py_ssize_t k = 0, head = 0
    cdef int p, q, tp, tq, idx
    cdef Py_ssize_t e
    cdef long long key

    p = init
    key = (<long long> p) * n + p
    left[0] = p
    right[0] = p
    parent[0] = -1
    pevent[0] = -1
    pkind[0] = 0
    index[key] = 0
    k = 1

    # local helper expanded inline three times to keep the loop flat
    while head < k:
        p = left[head]
        q = right[head]
        for e in range(m):
            tp = T[p, e]
            tq = T[q, e]
            if ok[e]:
                if tp >= 0 and tq >= 0:
                    key = (<long long> tp) * n + tq
                    idx = index[key]
                    if idx < 0:
                        if k == cap:
                            cap = cap * 2
                            left_arr = np.concatenate([left_arr, np.empty(cap - k, dtype=np.int32)])
                            right_arr = np.concatenate([right_arr, np.empty(cap - k, dtype=np.int32)])
                            parent_arr = np.concatenate([parent_arr, np.empty(cap - k, dtype=np.int32)])
                            pevent_arr = np.concatenate([pevent_arr, np.empty(cap - k, dtype=np.int32)])
                            pkind_arr = np.concatenate([pkind_arr, np.empty(cap - k, dtype=np.int8)])
                            left = left_arr
                            right = right_arr
                            parent = parent_arr
                            pevent = pevent_arr
                            pkind = pkind_arr
                        index[key] = <int> k
                        left[k] = tp
                        right[k] = tq
                        parent[k] = head
                        pevent[k] = <int> e
                        pkind[k] = 1
                        k += 1
            else:
                if tp >= 0:
                    key = (<long long> tp) * n + q
                    idx = index[key]
                    if idx < 0:
                        if k == cap:
                            cap = cap * 2
                            left_arr = np.concatenate([left_arr, np.empty(cap - k, dtype=np.int32)])
                            right_arr = np.concatenate([right_arr, np.empty(cap - k, dtype=np.int32)])
                            parent_arr = np.concatenate([parent_arr, np.empty(cap - k, dtype=np.int32)])
                            pevent_arr = np.concatenate([pevent_arr, np.empty(cap - k, dtype=np.int32)])
                            pkind_arr = np.concatenate([pkind_arr, np.empty(cap - k, dtype=np.int8)])
                            left = left_arr
                            right = right_arr
                            parent = parent_arr
                            pevent = pevent_arr
                            pkind = pkind_arr
                        index[key] = <int> k
                        left[k] = tp
                        right[k] = q
                        parent[k] = head
                        pevent[k] = <int> e
                        pkind[k] = 2
                        k += 1
                if tq >= 0:
                    key = (<long long> p) * n + tq
                    idx = index[key]
                    if idx < 0:
                        if k == cap:
                            cap = cap * 2
                            left_arr = np.concatenate([left_arr, np.empty(cap - k, dtype=np.int32)])
                            right_arr = np.concatenate([right_arr, np.empty(cap - k, dtype=np.int32)])
                            parent_arr = np.concatenate([parent_arr, np.empty(cap - k, dtype=np.int32)])
                            pevent_arr = np.concatenate([pevent_arr, np.empty(cap - k, dtype=np.int32)])
                            pkind_arr = np.concatenate([pkind_arr, np.empty(cap - k, dtype=np.int8)])
                            left = left_arr
                            right = right_arr
                            parent = parent_arr
                            pevent = pevent_arr
                            pkind = pkind_arr
                        index[key] = <int> k
                        left[k] = p
                        right[k] = tq
                        parent[k] = head
                        pevent[k] = <int> e
                        pkind[k] = 3
                        k += 1
        head += 1

    return (
        left_arr[:k].copy(),
        right_arr[:k].copy(),
        parent_arr[:k].copy(),
        pevent_arr[:k].copy(),
        pkind_arr[:k].copy(),
    )


def supcon_prune(ptrans, pcomp, gtrans, unctrl_ok, pmarked, pinit):
    P = np.ascontiguousarray(ptrans, dtype=np.int32)
    G = np.ascontiguousarray(gtrans, dtype=np.int32)
    comp_arr = np.ascontiguousarray(np.asarray(pcomp, dtype=np.int32))
    unctrl_arr = np.ascontiguousarray(np.asarray(unctrl_ok, dtype=np.uint8))
    marked_arr = np.ascontiguousarray(np.asarray(pmarked, dtype=np.int32))
    cdef Py_ssize_t k = P.shape[0]
    cdef Py_ssize_t m = P.shape[1]
    alive_arr = np.ones(k, dtype=np.uint8)

    cdef const int[:, ::1] PT = P
    cdef const int[:, ::1] GT = G
    cdef const int[::1] comp = comp_arr
    cdef const unsigned char[::1] unctrl = unctrl_arr
    cdef const int[::1] marked = marked_arr
    cdef unsigned char[::1] alive = alive_arr

    cdef Py_ssize_t p, e, i
    cdef int t, changed
    cdef int init = pinit

    all_events = np.ones(m, dtype=np.uint8)
    while True:
        changed = 0
        for p in range(k):
            if not alive[p]:
                continue
            for e in range(m):
                if unctrl[e] and GT[comp[p], e] >= 0:
                    t = PT[p, e]
                    if t < 0 or not alive[t]:
                        alive[p] = 0
                        changed = 1
                        break
        if alive[init]:
            r = reach(P, [init], all_events, alive_arr)
            targets = [int(marked[i]) for i in range(marked.shape[0]) if alive[marked[i]]]
            c = coreach(P, targets, all_events, alive_arr)
            keep_arr = (np.asarray(r, dtype=bool) & np.asarray(c, dtype=bool)).astype(np.uint8)
        else:
            keep_arr = np.zeros(k, dtype=np.uint8)
        if not np.array_equal(keep_arr, alive_arr):
            alive_arr[:] = keep_arr
            changed = 1
        if not changed:
            break
    return alive_arr
