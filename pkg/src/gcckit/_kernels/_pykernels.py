"""Pure-Python kernels for the hot loops.

The compiled backend (`_ckernels`) mirrors this module exactly; both must
produce bit-identical results so that every construction in the toolkit is
deterministic regardless of which backend is active.

Conventions shared by all kernels:

- a transition table is a dense ``int32`` array of shape ``(n, m)`` where rows
  are states, columns are events in alphabet order, and ``-1`` marks an
  undefined transition;
- breadth-first searches expand event columns in ascending index order, which
  is ascending label order, so discovery numbering and parent pointers are
  canonical;
- masks are ``uint8`` arrays (0/1).
"""

from __future__ import annotations

from collections import deque

import numpy as np

BACKEND = "python"


def reach(trans, sources, event_ok, alive=None):
    """Forward reachability from ``sources`` using the enabled event columns.

    ``alive`` restricts both the sources and the traversable targets.
    Returns a uint8 mask over states.
    """
    n, m = trans.shape
    rows = trans.tolist()
    ok = [bool(x) for x in event_ok]
    live = [True] * n if alive is None else [bool(x) for x in alive]
    seen = [False] * n
    queue = deque()
    for s in sources:
        s = int(s)
        if live[s] and not seen[s]:
            seen[s] = True
            queue.append(s)
    while queue:
        q = queue.popleft()
        row = rows[q]
        for e in range(m):
            if not ok[e]:
                continue
            t = row[e]
            if t >= 0 and live[t] and not seen[t]:
                seen[t] = True
                queue.append(t)
    return np.array(seen, dtype=np.uint8)


def coreach(trans, targets, event_ok, alive=None):
    """Backward reachability: states from which ``targets`` can be reached."""
    n, m = trans.shape
    rows = trans.tolist()
    ok = [bool(x) for x in event_ok]
    live = [True] * n if alive is None else [bool(x) for x in alive]
    # reverse adjacency restricted to live endpoints and enabled events
    rev = [[] for _ in range(n)]
    for q in range(n):
        if not live[q]:
            continue
        row = rows[q]
        for e in range(m):
            if not ok[e]:
                continue
            t = row[e]
            if t >= 0 and live[t]:
                rev[t].append(q)
    seen = [False] * n
    queue = deque()
    for s in targets:
        s = int(s)
        if live[s] and not seen[s]:
            seen[s] = True
            queue.append(s)
    while queue:
        q = queue.popleft()
        for p in rev[q]:
            if not seen[p]:
                seen[p] = True
                queue.append(p)
    return np.array(seen, dtype=np.uint8)


def product(trans_a, trans_b, init_a, init_b):
    """Reachable synchronized product of two tables over a shared event axis.

    A product transition under event ``e`` exists iff both components define
    one.  Returns ``(comp_a, comp_b, ptrans, parent, pevent)`` where the
    component arrays give each product state's parts, ``ptrans`` is the
    product table, and ``parent``/``pevent`` encode the BFS discovery tree
    (-1 at the root).
    """
    na, m = trans_a.shape
    nb = trans_b.shape[0]
    rows_a = trans_a.tolist()
    rows_b = trans_b.tolist()
    index = {}
    comp_a = []
    comp_b = []
    parent = []
    pevent = []
    ptrans = []

    def _add(a, b, par, ev):
        key = a * nb + b
        idx = index.get(key)
        if idx is None:
            idx = len(comp_a)
            index[key] = idx
            comp_a.append(a)
            comp_b.append(b)
            parent.append(par)
            pevent.append(ev)
            ptrans.append([-1] * m)
        return idx

    root = _add(int(init_a), int(init_b), -1, -1)
    queue = deque([root])
    while queue:
        p = queue.popleft()
        ra = rows_a[comp_a[p]]
        rb = rows_b[comp_b[p]]
        row = ptrans[p]
        for e in range(m):
            ta = ra[e]
            tb = rb[e]
            if ta >= 0 and tb >= 0:
                before = len(comp_a)
                idx = _add(ta, tb, p, e)
                row[e] = idx
                if idx == before:
                    queue.append(idx)
    return (
        np.array(comp_a, dtype=np.int32),
        np.array(comp_b, dtype=np.int32),
        np.array(ptrans, dtype=np.int32).reshape(len(comp_a), m),
        np.array(parent, dtype=np.int32),
        np.array(pevent, dtype=np.int32),
    )


def pair_bfs(trans, obs_ok, init):
    """Reachable lookalike state pairs.

    From an ordered pair (p, q): an observable event defined at both moves
    both components; an unobservable event moves one component at a time.
    Exactly the pairs reachable by two strings with equal projections.
    Returns ``(left, right, parent, pevent, pkind)`` with kind 0 for the
    root, 1 joint move, 2 left-only move, 3 right-only move.
    """
    n, m = trans.shape
    rows = trans.tolist()
    obs = [bool(x) for x in obs_ok]
    index = {}
    left = []
    right = []
    parent = []
    pevent = []
    pkind = []

    def _add(p, q, par, ev, kind):
        key = p * n + q
        idx = index.get(key)
        if idx is None:
            idx = len(left)
            index[key] = idx
            left.append(p)
            right.append(q)
            parent.append(par)
            pevent.append(ev)
            pkind.append(kind)
            return idx, True
        return idx, False

    root, _ = _add(int(init), int(init), -1, -1, 0)
    queue = deque([root])
    while queue:
        i = queue.popleft()
        p = left[i]
        q = right[i]
        rp = rows[p]
        rq = rows[q]
        for e in range(m):
            tp = rp[e]
            tq = rq[e]
            if obs[e]:
                if tp >= 0 and tq >= 0:
                    idx, new = _add(tp, tq, i, e, 1)
                    if new:
                        queue.append(idx)
            else:
                if tp >= 0:
                    idx, new = _add(tp, q, i, e, 2)
                    if new:
                        queue.append(idx)
                if tq >= 0:
                    idx, new = _add(p, tq, i, e, 3)
                    if new:
                        queue.append(idx)
    return (
        np.array(left, dtype=np.int32),
        np.array(right, dtype=np.int32),
        np.array(parent, dtype=np.int32),
        np.array(pevent, dtype=np.int32),
        np.array(pkind, dtype=np.int8),
    )


def supcon_prune(ptrans, pcomp, gtrans, unctrl_ok, pmarked, pinit):
    """Iterated bad-state deletion and trimming on a supervisor product.

    A product state is bad when the plant component enables an uncontrollable
    event the product does not (transition absent or into a deleted state).
    Deletion and trimming alternate until the surviving set is stable; the
    returned uint8 mask may be all zero.
    """
    k, m = ptrans.shape
    rows = ptrans.tolist()
    comp = [int(x) for x in pcomp]
    grows = gtrans.tolist()
    unctrl = [e for e in range(m) if unctrl_ok[e]]
    marked = [int(x) for x in pmarked]
    alive = [True] * k
    pinit = int(pinit)

    all_events = np.ones(m, dtype=np.uint8)
    while True:
        changed = False
        # bad-state pass
        for p in range(k):
            if not alive[p]:
                continue
            grow = grows[comp[p]]
            prow = rows[p]
            for e in unctrl:
                if grow[e] >= 0:
                    t = prow[e]
                    if t < 0 or not alive[t]:
                        alive[p] = False
                        changed = True
                        break
        # trim pass: reachable and coreachable within the survivors
        if alive[pinit]:
            pt = np.array(rows, dtype=np.int32).reshape(k, m)
            amask = np.array(alive, dtype=np.uint8)
            r = reach(pt, [pinit], all_events, amask)
            targets = [s for s in marked if alive[s]]
            c = coreach(pt, targets, all_events, amask)
            keep = (r.astype(bool) & c.astype(bool)).tolist()
        else:
            keep = [False] * k
        if keep != alive:
            alive = keep
            changed = True
        if not changed:
            break
    return np.array(alive, dtype=np.uint8)
