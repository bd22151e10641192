"""
Hot inner loops.

Every kernel here is written against plain numpy arrays and scalar loops so
that the same source runs either compiled by numba or as ordinary Python.
Set ``POSETQN_NO_NUMBA=1`` in the environment to force the pure-numpy path
(useful for debugging and for the benchmark in ``benchmarks/``).

Poset structure is passed in CSR form: ``up_ptr``/``up_idx`` list the upper
covers of each element, ``indeg`` counts lower covers. Edge arrays ``eu``,
``ev`` hold cover edges ``eu[e] < ev[e]``; ``in_ptr``/``in_idx`` list, for
each element ``v``, the ids of the edges whose upper end is ``v``.
"""

import os

import numpy as np

_DISABLED = os.environ.get("POSETQN_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    import numba

    USE_NUMBA = True

    def jit(fn):
        return numba.njit(cache=True)(fn)

except ImportError:
    USE_NUMBA = False

    def jit(fn):
        return fn


BACKEND = "numba" if USE_NUMBA else "numpy"


@jit
def lds_levels(seq):
    """Patience sorting for strictly decreasing subsequences.

    Returns ``(level, pred)`` where ``level[i]`` is the length of the longest
    strictly decreasing subsequence ending at ``i`` and ``pred[i]`` is the
    index preceding ``i`` in one such subsequence (-1 at the start).
    """
    m = seq.shape[0]
    level = np.zeros(m, dtype=np.int64)
    pred = np.full(m, -1, dtype=np.int64)
    # tails hold negated values so the piles are increasing
    tails = np.empty(m, dtype=np.int64)
    tail_idx = np.empty(m, dtype=np.int64)
    npiles = 0
    for i in range(m):
        x = -seq[i]
        lo = 0
        hi = npiles
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = x
        tail_idx[lo] = i
        if lo > 0:
            pred[i] = tail_idx[lo - 1]
        if lo == npiles:
            npiles += 1
        level[i] = lo + 1
    return level, pred


@jit
def lds_length(seq):
    m = seq.shape[0]
    tails = np.empty(m, dtype=np.int64)
    npiles = 0
    for i in range(m):
        x = -seq[i]
        lo = 0
        hi = npiles
        while lo < hi:
            mid = (lo + hi) // 2
            if tails[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        tails[lo] = x
        if lo == npiles:
            npiles += 1
    return npiles


@jit
def rainbow_sequence(pos, eu, ev):
    """Sort edges for the rainbow scan.

    Returns the edge permutation (left end ascending, right end ascending on
    ties) and the right-end positions in that order. A strictly decreasing
    run of right ends is then exactly a rainbow.
    """
    m = eu.shape[0]
    n = pos.shape[0]
    key = np.empty(m, dtype=np.int64)
    for e in range(m):
        key[e] = pos[eu[e]] * (n + 1) + pos[ev[e]]
    perm = np.argsort(key, kind="mergesort")
    right = np.empty(m, dtype=np.int64)
    for k in range(m):
        right[k] = pos[ev[perm[k]]]
    return perm, right


@jit
def max_rainbow_batch(orders, eu, ev):
    t, n = orders.shape
    out = np.zeros(t, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    for s in range(t):
        for i in range(n):
            pos[orders[s, i]] = i
        perm, right = rainbow_sequence(pos, eu, ev)
        out[s] = lds_length(right)
    return out


@jit
def queue_violations_batch(orders, eu, ev, qid):
    """Count nested same-queue edge pairs under each order."""
    t, n = orders.shape
    m = eu.shape[0]
    out = np.zeros(t, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    for s in range(t):
        for i in range(n):
            pos[orders[s, i]] = i
        c = 0
        for e in range(m):
            a = pos[eu[e]]
            d = pos[ev[e]]
            for f in range(m):
                if qid[f] != qid[e]:
                    continue
                if a < pos[eu[f]] and pos[ev[f]] < d:
                    c += 1
        out[s] = c
    return out


@jit
def dxdy_batch(orders, px, py):
    """Longest runs increasing in each order and decreasing in ``px``/``py``."""
    t, n = orders.shape
    dx = np.zeros(t, dtype=np.int64)
    dy = np.zeros(t, dtype=np.int64)
    sx = np.empty(n, dtype=np.int64)
    sy = np.empty(n, dtype=np.int64)
    for s in range(t):
        for i in range(n):
            sx[i] = px[orders[s, i]]
            sy[i] = py[orders[s, i]]
        dx[s] = lds_length(sx)
        dy[s] = lds_length(sy)
    return dx, dy


@jit
def sample_orders(up_ptr, up_idx, indeg0, uniforms):
    """Random topological sorts, one per row of ``uniforms``.

    At each step the minimal elements are taken in index order and the one at
    ``floor(u * k)`` is placed, ``u`` being the next uniform in the row.
    """
    t, n = uniforms.shape
    out = np.empty((t, n), dtype=np.int64)
    indeg = np.empty(n, dtype=np.int64)
    avail = np.empty(n, dtype=np.int64)
    for s in range(t):
        for i in range(n):
            indeg[i] = indeg0[i]
        for d in range(n):
            k = 0
            for v in range(n):
                if indeg[v] == 0:
                    avail[k] = v
                    k += 1
            j = int(uniforms[s, d] * k)
            if j >= k:
                j = k - 1
            v = avail[j]
            out[s, d] = v
            indeg[v] = -1
            for p in range(up_ptr[v], up_ptr[v + 1]):
                indeg[up_idx[p]] -= 1
    return out


@jit
def scan_extensions_dxdy(up_ptr, up_idx, indeg0, px, py, cap):
    """Walk every linear extension in lexicographic order.

    For each extension the lengths ``dx``, ``dy`` are maintained
    incrementally along the prefix. Returns ``(count, min_sum, order_at_min_sum,
    min_max, order_at_min_max, complete)``; ``complete`` is False when more
    than ``cap`` extensions exist (the walk stops there).
    """
    n = indeg0.shape[0]
    indeg = indeg0.copy()
    placed = np.zeros(n, dtype=np.bool_)
    order = np.zeros(n, dtype=np.int64)
    nxt = np.zeros(n + 1, dtype=np.int64)
    lvx = np.zeros(n, dtype=np.int64)
    lvy = np.zeros(n, dtype=np.int64)
    bestx = np.zeros(n + 1, dtype=np.int64)
    besty = np.zeros(n + 1, dtype=np.int64)
    best_sum = n + n + 1
    best_max = n + 1
    arg_sum = np.arange(n)
    arg_max = np.arange(n)
    count = 0
    complete = True
    if n == 0:
        return 1, 0, arg_sum, 0, arg_max, True
    d = 0
    while True:
        if d == n:
            if count == cap:
                complete = False
                break
            count += 1
            s = bestx[n] + besty[n]
            if s < best_sum:
                best_sum = s
                arg_sum[:] = order
            mx = max(bestx[n], besty[n])
            if mx < best_max:
                best_max = mx
                arg_max[:] = order
            d -= 1
            v = order[d]
            placed[v] = False
            for p in range(up_ptr[v], up_ptr[v + 1]):
                indeg[up_idx[p]] += 1
            continue
        v = nxt[d]
        while v < n and (placed[v] or indeg[v] != 0):
            v += 1
        if v == n:
            if d == 0:
                break
            d -= 1
            u = order[d]
            placed[u] = False
            for p in range(up_ptr[u], up_ptr[u + 1]):
                indeg[up_idx[p]] += 1
            continue
        nxt[d] = v + 1
        order[d] = v
        placed[v] = True
        for p in range(up_ptr[v], up_ptr[v + 1]):
            indeg[up_idx[p]] -= 1
        lx = 1
        ly = 1
        for t in range(d):
            w = order[t]
            if px[w] > px[v] and lvx[t] + 1 > lx:
                lx = lvx[t] + 1
            if py[w] > py[v] and lvy[t] + 1 > ly:
                ly = lvy[t] + 1
        lvx[d] = lx
        lvy[d] = ly
        bestx[d + 1] = max(bestx[d], lx)
        besty[d + 1] = max(besty[d], ly)
        d += 1
        nxt[d] = 0
    return count, best_sum, arg_sum, best_max, arg_max, complete


@jit
def exact_qn_search(up_ptr, up_idx, indeg0, in_ptr, in_idx, eu, incumbent, global_lb, cap):
    """Branch and bound over prefixes of linear extensions.

    Returns ``(best, order, nodes, complete)``. ``best`` stays equal to
    ``incumbent`` (and ``order`` is all -1) when nothing strictly better exists.

    When element ``v`` is placed, its lower cover edges close with the
    largest right end so far, so the depth of the deepest rainbow having such
    an edge outermost is final at that moment. A prefix is cut when the
    rainbow it already forces, plus one if some still-open edge starts left
    of a closed edge, reaches the incumbent.
    """
    n = indeg0.shape[0]
    m = eu.shape[0]
    indeg = indeg0.copy()
    rem_up = np.zeros(n, dtype=np.int64)
    for v in range(n):
        rem_up[v] = up_ptr[v + 1] - up_ptr[v]
    pos = np.full(n, -1, dtype=np.int64)
    order = np.zeros(n, dtype=np.int64)
    best_order = np.full(n, -1, dtype=np.int64)
    nxt = np.zeros(n + 1, dtype=np.int64)
    depth = np.zeros(m, dtype=np.int64)
    closed = np.zeros(m, dtype=np.int64)
    closed_start = np.zeros(n + 1, dtype=np.int64)
    curmax = np.zeros(n + 1, dtype=np.int64)
    nclosed = 0
    best = incumbent
    nodes = 0
    complete = True
    if best <= global_lb or n == 0:
        return best, best_order, nodes, complete
    d = 0
    while True:
        if d == n:
            if curmax[n] < best:
                best = curmax[n]
                best_order[:] = order
                if best <= global_lb:
                    break
            d -= 1
            v = order[d]
            pos[v] = -1
            for p in range(up_ptr[v], up_ptr[v + 1]):
                indeg[up_idx[p]] += 1
            for p in range(in_ptr[v], in_ptr[v + 1]):
                rem_up[eu[in_idx[p]]] += 1
            nclosed = closed_start[d]
            continue
        v = nxt[d]
        while v < n and (pos[v] >= 0 or indeg[v] != 0):
            v += 1
        if v == n:
            if d == 0:
                break
            d -= 1
            u = order[d]
            pos[u] = -1
            for p in range(up_ptr[u], up_ptr[u + 1]):
                indeg[up_idx[p]] += 1
            for p in range(in_ptr[u], in_ptr[u + 1]):
                rem_up[eu[in_idx[p]]] += 1
            nclosed = closed_start[d]
            continue
        nxt[d] = v + 1
        nodes += 1
        if nodes > cap:
            complete = False
            break
        order[d] = v
        pos[v] = d
        for p in range(up_ptr[v], up_ptr[v + 1]):
            indeg[up_idx[p]] -= 1
        closed_start[d] = nclosed
        cm = curmax[d]
        for p in range(in_ptr[v], in_ptr[v + 1]):
            e = in_idx[p]
            lu = pos[eu[e]]
            rem_up[eu[e]] -= 1
            dep = 1
            for q in range(closed_start[d]):
                f = closed[q]
                if pos[eu[f]] > lu and depth[f] + 1 > dep:
                    dep = depth[f] + 1
            depth[e] = dep
            closed[nclosed] = e
            nclosed += 1
            if dep > cm:
                cm = dep
        curmax[d + 1] = cm
        lb = cm
        open_left = n
        for t in range(d + 1):
            if rem_up[order[t]] > 0:
                open_left = t
                break
        if open_left < n:
            for q in range(nclosed):
                f = closed[q]
                if pos[eu[f]] > open_left and depth[f] + 1 > lb:
                    lb = depth[f] + 1
        if lb >= best:
            pos[v] = -1
            for p in range(up_ptr[v], up_ptr[v + 1]):
                indeg[up_idx[p]] += 1
            for p in range(in_ptr[v], in_ptr[v + 1]):
                rem_up[eu[in_idx[p]]] += 1
            nclosed = closed_start[d]
            continue
        d += 1
        nxt[d] = 0
    return best, best_order, nodes, complete


@jit
def bipartite_matching(adj):
    """Maximum matching in the split graph of a dense relation.

    ``adj[u, v]`` allows matching left ``u`` to right ``v``. Greedy start,
    then one augmenting-path search per free left vertex. Returns
    ``match[u]`` (right partner of ``u`` or -1).
    """
    n = adj.shape[0]
    match_l = np.full(n, -1, dtype=np.int64)
    match_r = np.full(n, -1, dtype=np.int64)
    for u in range(n):
        for v in range(n):
            if adj[u, v] and match_r[v] < 0:
                match_l[u] = v
                match_r[v] = u
                break
    seen = np.zeros(n, dtype=np.int64)
    stamp = 0
    stack_u = np.empty(n + 1, dtype=np.int64)
    stack_v = np.empty(n + 1, dtype=np.int64)
    for root in range(n):
        if match_l[root] >= 0:
            continue
        stamp += 1
        top = 0
        stack_u[0] = root
        stack_v[0] = 0
        found = -1
        while top >= 0:
            u = stack_u[top]
            v = stack_v[top]
            advanced = False
            while v < n:
                if adj[u, v] and seen[v] != stamp:
                    seen[v] = stamp
                    stack_v[top] = v + 1
                    w = match_r[v]
                    if w < 0:
                        found = v
                    else:
                        top += 1
                        stack_u[top] = w
                        stack_v[top] = 0
                    advanced = True
                    break
                v += 1
            if found >= 0:
                break
            if not advanced:
                top -= 1
        if found >= 0:
            # augment: each left vertex on the stack takes the right vertex found below it
            v = found
            while top >= 0:
                u = stack_u[top]
                nv = match_l[u]
                match_l[u] = v
                match_r[v] = u
                v = nv
                top -= 1
    return match_l
