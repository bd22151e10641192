"""Finite strict partial orders on indexed elements ``0..n-1``."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import _kernels


class PosetError(ValueError):
    pass


class CycleError(PosetError):
    """Generator relations contain a directed cycle; ``cycle`` lists it."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("relations contain a cycle: " + " < ".join(map(str, self.cycle + self.cycle[:1])))


class ExtensionCapExceeded(RuntimeError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"more than {cap} linear extensions")


class Poset:
    """An immutable finite strict order.

    ``lt`` is a dense boolean ``(n, n)`` matrix with ``lt[i, j]`` true iff
    ``i < j``. It is transitively closed, irreflexive and antisymmetric.
    Use :func:`from_relations` to build one from generating pairs.
    """

    def __init__(self, lt: np.ndarray, labels: Sequence[str] | None = None):
        lt = np.array(lt, dtype=bool, copy=True)
        if lt.ndim != 2 or lt.shape[0] != lt.shape[1]:
            raise PosetError("relation matrix must be square")
        lt.setflags(write=False)
        self.lt = lt
        self.n = lt.shape[0]
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != self.n:
                raise PosetError("one label per element required")
        self.labels = labels

    def less(self, i: int, j: int) -> bool:
        return bool(self.lt[i, j])

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.lt[i, j] or self.lt[j, i])

    def pairs(self) -> np.ndarray:
        """All relations ``i < j`` as an ``(k, 2)`` array."""
        return np.argwhere(self.lt)

    def check(self) -> None:
        """Raise if the order invariants fail."""
        lt = self.lt
        if lt.diagonal().any():
            raise PosetError("relation is not irreflexive")
        if (lt & lt.T).any():
            raise PosetError("relation is not antisymmetric")
        m = lt.astype(np.float32)
        if ((m @ m > 0) & ~lt).any():
            raise PosetError("relation is not transitively closed")

    @cached_property
    def covers(self) -> np.ndarray:
        """Cover edges ``(u, v)``, sorted, as an ``(m, 2)`` int array."""
        if self.n == 0:
            return np.zeros((0, 2), dtype=np.int64)
        m = self.lt.astype(np.float32)
        between = (m @ m) > 0
        return np.argwhere(self.lt & ~between).astype(np.int64)

    @cached_property
    def _csr(self):
        # upper covers in CSR form plus lower-cover edge ids per element
        n = self.n
        E = self.covers
        eu = np.ascontiguousarray(E[:, 0])
        ev = np.ascontiguousarray(E[:, 1])
        up_ptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(up_ptr, eu + 1, 1)
        up_ptr = np.cumsum(up_ptr)
        up_idx = ev[np.argsort(eu, kind="stable")].astype(np.int64)
        indeg = np.bincount(ev, minlength=n).astype(np.int64)
        in_ptr = np.concatenate([[0], np.cumsum(indeg)]).astype(np.int64)
        in_idx = np.argsort(ev, kind="stable").astype(np.int64)
        return up_ptr, up_idx, indeg, in_ptr, in_idx, eu, ev

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.lt, other.lt))

    def __hash__(self):
        return hash((self.n, self.lt.tobytes()))

    def __repr__(self):
        return f"Poset(n={self.n}, relations={int(self.lt.sum())})"


class LinearExtension:
    """A permutation of the elements; ``order[k]`` sits at position ``k``."""

    __slots__ = ("order", "position")

    def __init__(self, order: Sequence[int]):
        order = np.array(order, dtype=np.int64)
        n = order.shape[0]
        if sorted(order.tolist()) != list(range(n)):
            raise PosetError(f"not a permutation of 0..{n - 1}: {order.tolist()}")
        position = np.empty(n, dtype=np.int64)
        position[order] = np.arange(n)
        order.setflags(write=False)
        position.setflags(write=False)
        self.order = order
        self.position = position

    def __len__(self):
        return self.order.shape[0]

    def __iter__(self):
        return iter(self.order.tolist())

    def __eq__(self, other):
        if isinstance(other, LinearExtension):
            return bool(np.array_equal(self.order, other.order))
        return NotImplemented

    def __hash__(self):
        return hash(self.order.tobytes())

    def __repr__(self):
        return f"LinearExtension({self.order.tolist()})"

    def reversed(self) -> "LinearExtension":
        return LinearExtension(self.order[::-1])


@dataclass(frozen=True)
class Realizer:
    lx: LinearExtension
    ly: LinearExtension

    def is_valid_for(self, P: Poset) -> bool:
        if len(self.lx) != P.n or len(self.ly) != P.n:
            return False
        px, py = self.lx.position, self.ly.position
        both = (px[:, None] < px[None, :]) & (py[:, None] < py[None, :])
        return bool(np.array_equal(both, P.lt))


@dataclass(frozen=True)
class ChainPartition:
    chain_of: np.ndarray
    k: int

    def chains(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for x, c in enumerate(self.chain_of.tolist()):
            out[c].append(x)
        return out

    def is_valid_for(self, P: Poset) -> bool:
        if self.chain_of.shape != (P.n,):
            return False
        if P.n and (self.chain_of.min() < 0 or self.chain_of.max() >= self.k):
            return False
        same = self.chain_of[:, None] == self.chain_of[None, :]
        np.fill_diagonal(same, False)
        comp = P.lt | P.lt.T
        return bool(not (same & ~comp).any())


@dataclass(frozen=True)
class WidthResult:
    w: int
    antichain: list[int]
    chains: ChainPartition = field(repr=False)

    def __iter__(self):
        return iter((self.w, self.antichain, self.chains))


def _topological(n: int, succ: list[list[int]]) -> list[int] | None:
    indeg = [0] * n
    for u in range(n):
        for v in succ[u]:
            indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    out = []
    while stack:
        u = stack.pop()
        out.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                stack.append(v)
    return out if len(out) == n else None


def _find_cycle(n: int, succ: list[list[int]]) -> list[int]:
    color = [0] * n
    parent = [-1] * n
    for s in range(n):
        if color[s]:
            continue
        stack = [(s, iter(succ[s]))]
        color[s] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if color[v] == 0:
                    color[v] = 1
                    parent[v] = u
                    stack.append((v, iter(succ[v])))
                    break
                if color[v] == 1:
                    cyc = [u]
                    while cyc[-1] != v:
                        cyc.append(parent[cyc[-1]])
                    return cyc[::-1]
            else:
                color[u] = 2
                stack.pop()
    return []


def from_relations(n: int, pairs, labels: Sequence[str] | None = None) -> Poset:
    """Transitive closure of the generating pairs ``(i, j)`` meaning ``i < j``.

    Raises :class:`CycleError` (with a witness cycle) if the pairs are not
    acyclic and :class:`PosetError` on out-of-range indices.
    """
    n = int(n)
    if n < 0:
        raise PosetError("element count must be non-negative")
    arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2) if len(pairs) else np.zeros((0, 2), dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise PosetError(f"relation index out of range 0..{n - 1}")
    arr = np.unique(arr, axis=0) if arr.size else arr
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for i, j in arr.tolist():
        if i == j:
            raise CycleError([i])
        succ[i].append(j)
        pred[j].append(i)
    topo = _topological(n, succ)
    if topo is None:
        raise CycleError(_find_cycle(n, succ))
    # down[v, u] is True iff u < v
    down = np.zeros((n, n), dtype=bool)
    for v in topo:
        ps = pred[v]
        if ps:
            down[v] = down[ps].any(axis=0)
            down[v, ps] = True
    return Poset(down.T, labels)


def chain(n: int) -> Poset:
    return Poset(np.triu(np.ones((n, n), dtype=bool), 1))


def antichain(n: int) -> Poset:
    return Poset(np.zeros((n, n), dtype=bool))


def cover_edges(P: Poset) -> np.ndarray:
    """The cover graph of ``P`` as an ``(m, 2)`` array of edges ``(u, v)``."""
    return P.covers


def dual(P: Poset) -> Poset:
    return Poset(P.lt.T, P.labels)


def width(P: Poset) -> WidthResult:
    """Width with a maximum antichain and a minimum chain partition.

    Dilworth via König: match ``u -> v`` for ``u < v`` in the split graph;
    matched pairs link chains, and the alternating-path
    reachable set from free left vertices yields the antichain.
    """
    n = P.n
    if n == 0:
        return WidthResult(0, [], ChainPartition(np.zeros(0, dtype=np.int64), 0))
    nxt = _kernels.bipartite_matching(P.lt)
    prv = np.full(n, -1, dtype=np.int64)
    for u in range(n):
        if nxt[u] >= 0:
            prv[nxt[u]] = u
    chain_of = np.full(n, -1, dtype=np.int64)
    k = 0
    for s in range(n):
        if prv[s] >= 0:
            continue
        x = s
        while x >= 0:
            chain_of[x] = k
            x = nxt[x]
        k += 1

    # König: Z = vertices reachable from free left vertices by alternating paths
    zl = np.zeros(n, dtype=bool)
    zr = np.zeros(n, dtype=bool)
    frontier = [u for u in range(n) if nxt[u] < 0]
    for u in frontier:
        zl[u] = True
    while frontier:
        new = []
        for u in frontier:
            for v in np.flatnonzero(P.lt[u] & ~zr).tolist():
                zr[v] = True
                w = prv[v]
                if w >= 0 and not zl[w]:
                    zl[w] = True
                    new.append(w)
        frontier = new
    # cover = (L \ Z) u (R n Z); antichain = elements with neither copy covered
    anti = np.flatnonzero(zl & ~zr).tolist()
    if len(anti) != k:
        raise AssertionError("Dilworth certificate mismatch")
    return WidthResult(k, anti, ChainPartition(chain_of, k))


def is_antichain(P: Poset, elements) -> bool:
    idx = np.asarray(list(elements), dtype=np.int64)
    if idx.size == 0:
        return True
    sub = P.lt[np.ix_(idx, idx)]
    return not sub.any()


def is_linear_extension(P: Poset, order) -> bool:
    L = order if isinstance(order, LinearExtension) else LinearExtension(order)
    if len(L) != P.n:
        raise PosetError("extension length differs from element count")
    pos = L.position
    E = P.covers
    return bool(np.all(pos[E[:, 0]] < pos[E[:, 1]]))


def enumerate_linear_extensions(P: Poset, cap: int | None = None) -> Iterator[LinearExtension]:
    """Yield every linear extension once, lexicographically by element index.

    If ``cap`` is given and more than ``cap`` extensions exist,
    :class:`ExtensionCapExceeded` is raised in place of the ``cap + 1``-th.
    """
    n = P.n
    up_ptr, up_idx, indeg0, *_ = P._csr
    up = [up_idx[up_ptr[v]:up_ptr[v + 1]].tolist() for v in range(n)]
    indeg = indeg0.tolist()
    placed = [False] * n
    order = [0] * n
    nxt = [0] * (n + 1)
    count = 0
    d = 0
    while True:
        if d == n:
            if cap is not None and count >= cap:
                raise ExtensionCapExceeded(cap)
            count += 1
            yield LinearExtension(order)
            if n == 0:
                return
            d -= 1
            v = order[d]
            placed[v] = False
            for w in up[v]:
                indeg[w] += 1
            continue
        v = nxt[d]
        while v < n and (placed[v] or indeg[v]):
            v += 1
        if v == n:
            if d == 0:
                return
            d -= 1
            u = order[d]
            placed[u] = False
            for w in up[u]:
                indeg[w] += 1
            continue
        nxt[d] = v + 1
        order[d] = v
        placed[v] = True
        for w in up[v]:
            indeg[w] -= 1
        d += 1
        nxt[d] = 0


def sample_linear_extensions(P: Poset, trials: int, seed: int) -> np.ndarray:
    """``trials`` random topological sorts as a ``(trials, n)`` int array.

    Each step picks uniformly among the currently minimal elements. This is
    not uniform over linear extensions.
    """
    up_ptr, up_idx, indeg0, *_ = P._csr
    u = np.random.default_rng(seed).random((int(trials), P.n))
    return _kernels.sample_orders(up_ptr, up_idx, indeg0, u)


def sample_linear_extension(P: Poset, seed: int) -> LinearExtension:
    return LinearExtension(sample_linear_extensions(P, 1, seed)[0])


def compose_series(P: Poset, Q: Poset) -> Poset:
    """Every element of ``P`` below every element of ``Q``; ``Q`` shifted by ``P.n``."""
    n = P.n + Q.n
    lt = np.zeros((n, n), dtype=bool)
    lt[:P.n, :P.n] = P.lt
    lt[P.n:, P.n:] = Q.lt
    lt[:P.n, P.n:] = True
    return Poset(lt)


def compose_parallel(P: Poset, Q: Poset) -> Poset:
    n = P.n + Q.n
    lt = np.zeros((n, n), dtype=bool)
    lt[:P.n, :P.n] = P.lt
    lt[P.n:, P.n:] = Q.lt
    return Poset(lt)


def is_order_isomorphism(P: Poset, Q: Poset, mapping) -> bool:
    f = np.asarray(mapping, dtype=np.int64)
    if P.n != Q.n or f.shape != (P.n,) or sorted(f.tolist()) != list(range(P.n)):
        return False
    return bool(np.array_equal(Q.lt[np.ix_(f, f)], P.lt))


def _signatures(P: Poset) -> list[tuple]:
    lt = P.lt
    E = P.covers
    below = lt.sum(axis=0)
    above = lt.sum(axis=1)
    cdown = np.bincount(E[:, 1], minlength=P.n)
    cup = np.bincount(E[:, 0], minlength=P.n)
    # longest chain ending at each element
    level = np.zeros(P.n, dtype=np.int64)
    for v in np.argsort(below, kind="stable"):
        ps = np.flatnonzero(lt[:, v])
        level[v] = level[ps].max() + 1 if ps.size else 0
    base = [(int(below[i]), int(above[i]), int(cdown[i]), int(cup[i]), int(level[i])) for i in range(P.n)]
    # one refinement round over cover neighbours
    out = []
    for i in range(P.n):
        lo = sorted(base[j] for j in E[E[:, 1] == i, 0].tolist())
        hi = sorted(base[j] for j in E[E[:, 0] == i, 1].tolist())
        out.append((base[i], tuple(lo), tuple(hi)))
    return out


def is_isomorphic(P: Poset, Q: Poset) -> tuple[bool, list[int] | None]:
    """Backtracking order-isomorphism search with invariant pruning.

    Returns ``(True, f)`` with ``f[i]`` the image of element ``i`` of ``P``,
    or ``(False, None)``. Meant for small posets.
    """
    if P.n != Q.n:
        return False, None
    n = P.n
    if int(P.lt.sum()) != int(Q.lt.sum()):
        return False, None
    sp, sq = _signatures(P), _signatures(Q)
    if sorted(sp) != sorted(sq):
        return False, None
    cands = {}
    for j, s in enumerate(sq):
        cands.setdefault(s, []).append(j)
    # rarest signature classes first, then by level
    order = sorted(range(n), key=lambda i: (len(cands[sp[i]]), sp[i][0][4], i))
    f = [-1] * n
    used = [False] * n
    Plt, Qlt = P.lt, Q.lt

    def consistent(i, j, k):
        for t in range(k):
            a = order[t]
            b = f[a]
            if Plt[i, a] != Qlt[j, b] or Plt[a, i] != Qlt[b, j]:
                return False
        return True

    def search(k):
        if k == n:
            return True
        i = order[k]
        for j in cands[sp[i]]:
            if used[j] or not consistent(i, j, k):
                continue
            f[i] = j
            used[j] = True
            if search(k + 1):
                return True
            used[j] = False
            f[i] = -1
        return False

    if search(0):
        return True, f
    return False, None


def restrict(P: Poset, elements) -> Poset:
    idx = np.asarray(list(elements), dtype=np.int64)
    return Poset(P.lt[np.ix_(idx, idx)])
