"""Rainbows, queue partitions and the exact queue-number of a poset."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .poset import (
    ChainPartition,
    LinearExtension,
    Poset,
    PosetError,
    sample_linear_extensions,
    width,
)


@dataclass(frozen=True)
class QueueAssignment:
    """Queue id per edge; ``queue_of[e]`` belongs to ``edges[e]``."""

    edges: np.ndarray
    queue_of: np.ndarray
    k: int
    scope: str  # "per-extension" or "universal"

    def queues(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for (u, v), q in zip(self.edges.tolist(), self.queue_of.tolist()):
            out.setdefault(q, []).append((u, v))
        return out

    def violations(self, L: LinearExtension) -> int:
        """Number of nested same-queue pairs under ``L``."""
        E = self.edges
        if len(E) == 0:
            return 0
        return int(_kernels.queue_violations_batch(
            L.order[None, :].copy(), E[:, 0].copy(), E[:, 1].copy(), self.queue_of)[0])


@dataclass(frozen=True)
class RainbowWitness:
    """Edges listed outermost first."""

    edges: list[tuple[int, int]]

    @property
    def k(self) -> int:
        return len(self.edges)

    def is_valid(self, L: LinearExtension) -> bool:
        pos = L.position
        for (a, b), (c, d) in zip(self.edges, self.edges[1:]):
            if not (pos[a] < pos[c] and pos[d] < pos[b]):
                return False
        return all(pos[a] < pos[b] for a, b in self.edges)


def nests(L: LinearExtension, e, f) -> bool:
    """True iff edge ``f`` lies strictly inside edge ``e`` under ``L``."""
    pos = L.position
    return bool(pos[e[0]] < pos[f[0]] and pos[f[1]] < pos[e[1]])


def _edges(E) -> np.ndarray:
    E = np.asarray(E, dtype=np.int64)
    return E.reshape(-1, 2)


def _rainbow_levels(L: LinearExtension, E: np.ndarray):
    pos = L.position
    if len(E) and np.any(pos[E[:, 0]] >= pos[E[:, 1]]):
        raise PosetError("order is not a linear extension for these edges")
    perm, right = _kernels.rainbow_sequence(pos, E[:, 0].copy(), E[:, 1].copy())
    level, pred = _kernels.lds_levels(right)
    return perm, level, pred


def max_rainbow(L: LinearExtension, E) -> tuple[int, RainbowWitness]:
    """Largest set of pairwise nested edges under ``L``.

    Edges are sorted by left end (ties by right end); a rainbow is then a
    strictly decreasing run of right ends, found by patience sorting. The
    witness ends at the first edge (in that order) reaching the top level.
    """
    E = _edges(E)
    if len(E) == 0:
        return 0, RainbowWitness([])
    perm, level, pred = _rainbow_levels(L, E)
    k = int(level.max())
    i = int(np.argmax(level))
    chain = []
    while i >= 0:
        chain.append(tuple(int(x) for x in E[perm[i]]))
        i = int(pred[i])
    return k, RainbowWitness(chain[::-1])


def min_queue_partition(L: LinearExtension, E) -> QueueAssignment:
    """Fewest queues for fixed ``L``: an edge's queue is the length of the
    longest rainbow having it innermost, minus one."""
    E = _edges(E)
    if len(E) == 0:
        return QueueAssignment(E, np.zeros(0, dtype=np.int64), 0, "per-extension")
    perm, level, _ = _rainbow_levels(L, E)
    q = np.empty(len(E), dtype=np.int64)
    q[perm] = level - 1
    return QueueAssignment(E, q, int(level.max()), "per-extension")


def hp_queue_assignment(P: Poset, C: ChainPartition | None = None) -> QueueAssignment:
    """Queue ``(chain(u), chain(v))`` for each cover edge ``(u, v)``.

    Valid for every linear extension simultaneously: two nested edges with
    the same chain pair would make the outer one transitively implied.
    """
    if C is None:
        C = width(P).chains
    if not C.is_valid_for(P):
        raise PosetError("chain partition is inconsistent with the poset")
    E = P.covers
    w = C.k
    q = (C.chain_of[E[:, 0]] * w + C.chain_of[E[:, 1]]).astype(np.int64)
    return QueueAssignment(E, q, w * w, "universal")


@dataclass(frozen=True)
class QueueNumberResult:
    qn: int
    best: LinearExtension
    witness: QueueAssignment
    exact: bool
    lower: int
    upper: int
    nodes: int


def _greedy_incumbent(P: Poset, tries: int = 64, seed: int = 0):
    E = P.covers
    orders = np.vstack([_lex_first(P)[None, :], sample_linear_extensions(P, tries, seed)])
    vals = _kernels.max_rainbow_batch(orders, E[:, 0].copy(), E[:, 1].copy())
    i = int(np.argmin(vals))
    return int(vals[i]), orders[i]


def _lex_first(P: Poset) -> np.ndarray:
    up_ptr, up_idx, indeg0, *_ = P._csr
    u = np.zeros((1, P.n))
    return _kernels.sample_orders(up_ptr, up_idx, indeg0, u)[0]


def exact_queue_number(P: Poset, cap: int = 50_000_000) -> QueueNumberResult:
    """Minimum over linear extensions of the largest rainbow.

    Branch and bound over extension prefixes with an incumbent seeded from a
    few greedy/random extensions (never above width squared). If more than
    ``cap`` search nodes are needed the result carries ``exact=False`` with
    the best extension found as upper bound.
    """
    n = P.n
    E = P.covers
    if len(E) == 0:
        L = LinearExtension(np.arange(n))
        return QueueNumberResult(0, L, min_queue_partition(L, E), True, 0, 0, 0)
    up_ptr, up_idx, indeg0, in_ptr, in_idx, eu, ev = P._csr
    upper, order = _greedy_incumbent(P)
    w = width(P).w
    assert upper <= w * w
    global_lb = 1
    best, found, nodes, complete = _kernels.exact_qn_search(
        up_ptr, up_idx, indeg0, in_ptr, in_idx, eu, upper, global_lb, cap)
    if found[0] >= 0:
        order = found
    L = LinearExtension(order)
    best = int(best)
    lower = best if complete else global_lb
    return QueueNumberResult(best, L, min_queue_partition(L, E), bool(complete), lower, best, int(nodes))
