"""Shared fixtures and brute-force oracles.

The oracles here deliberately avoid the package's algorithms: plain Python
sets, itertools enumeration and quadratic dynamic programs.
"""

import itertools
import random

import numpy as np
import pytest
from hypothesis import strategies as st

from posetqn import constructions as C
from posetqn.poset import Poset, antichain, chain, from_relations

ACCEPTANCE_LINES = []


def record_acceptance(number, ok, detail=""):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- oracles ---------------------------------------------------------------

def brute_closure(n, pairs):
    rel = set(map(tuple, pairs))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def brute_covers(P):
    n = P.n
    rel = {(i, j) for i in range(n) for j in range(n) if P.lt[i, j]}
    return sorted((a, b) for (a, b) in rel
                  if not any((a, c) in rel and (c, b) in rel for c in range(n)))


def brute_extensions(P):
    n = P.n
    rel = [(i, j) for i in range(n) for j in range(n) if P.lt[i, j]]
    out = []
    for perm in itertools.permutations(range(n)):
        pos = {v: k for k, v in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in rel):
            out.append(perm)
    return out


def oracle_extensions(P):
    """Topological sorts by plain recursion; fewer visits than all n! permutations."""
    n = P.n
    below = [{i for i in range(n) if P.lt[i, j]} for j in range(n)]
    out, cur, placed = [], [], set()

    def go():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for v in range(n):
            if v not in placed and below[v] <= placed:
                placed.add(v)
                cur.append(v)
                go()
                cur.pop()
                placed.remove(v)

    go()
    return out


def brute_nested(pos, e, f):
    return pos[e[0]] < pos[f[0]] and pos[f[1]] < pos[e[1]]


def brute_max_rainbow(order, edges):
    """Largest pairwise-nested edge set, by subset enumeration."""
    pos = {v: k for k, v in enumerate(order)}
    edges = [tuple(e) for e in edges]
    best = 0
    for r in range(len(edges), 0, -1):
        if r <= best:
            break
        for sub in itertools.combinations(edges, r):
            if all(brute_nested(pos, e, f) or brute_nested(pos, f, e)
                   for e, f in itertools.combinations(sub, 2)):
                return r
    return best


def rainbow_dp(order, edges):
    """Quadratic longest chain in the nesting order."""
    pos = {v: k for k, v in enumerate(order)}
    es = sorted((tuple(e) for e in edges), key=lambda e: (pos[e[0]], -pos[e[1]]))
    depth = []
    for i, f in enumerate(es):
        depth.append(1 + max([depth[j] for j in range(i) if brute_nested(pos, es[j], f)], default=0))
    return max(depth, default=0)


def brute_min_queues(order, edges):
    """Fewest queues by backtracking over queue assignments."""
    pos = {v: k for k, v in enumerate(order)}
    edges = [tuple(e) for e in edges]
    m = len(edges)
    if m == 0:
        return 0
    for k in range(1, m + 1):
        assign = [-1] * m

        def go(i):
            if i == m:
                return True
            for q in range(k):
                if all(assign[j] != q or not (brute_nested(pos, edges[i], edges[j]) or
                                              brute_nested(pos, edges[j], edges[i]))
                       for j in range(i)):
                    assign[i] = q
                    if go(i + 1):
                        return True
            assign[i] = -1
            return False

        if go(0):
            return k
    return m


def brute_qn(P, extensions=None):
    E = brute_covers(P)
    exts = extensions if extensions is not None else brute_extensions(P)
    return min(rainbow_dp(L, E) for L in exts)


def brute_width(P):
    n = P.n
    for r in range(n, 0, -1):
        for sub in itertools.combinations(range(n), r):
            if not any(P.lt[a, b] or P.lt[b, a] for a, b in itertools.combinations(sub, 2)):
                return r
    return 0


def brute_lds(seq):
    best = [1] * len(seq)
    for i in range(len(seq)):
        for j in range(i):
            if seq[j] > seq[i]:
                best[i] = max(best[i], best[j] + 1)
    return max(best, default=0)


# --- generators --------------------------------------------------------------

def random_poset(n, p, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_relations(n, pairs)


def random_width2(n, rng):
    """Random poset that is a union of two chains; width exactly 2."""
    while True:
        k = rng.randint(1, n - 1)
        a = list(range(k))
        b = list(range(k, n))
        pairs = [(a[i], a[i + 1]) for i in range(k - 1)] + [(b[i], b[i + 1]) for i in range(n - k - 1)]
        for _ in range(rng.randint(0, 4)):
            x, y = rng.choice(a), rng.choice(b)
            pairs.append((x, y) if rng.random() < 0.5 else (y, x))
        try:
            P = from_relations(n, pairs)
        except ValueError:
            continue
        if brute_width(P) == 2:
            return P


@st.composite
def posets(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(list(range(n))))
    flags = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = []
    it = iter(flags)
    for i in range(n):
        for j in range(i + 1, n):
            if next(it):
                pairs.append((perm[i], perm[j]))
    return from_relations(n, pairs)


def small_corpus():
    """Named posets with at most 9 elements."""
    rng = random.Random(20240607)
    items = {
        "chain5": chain(5),
        "antichain6": antichain(6),
        "kww1": C.build_kww(1).poset,
        "kww2": C.build_kww(2).poset,
        "kww3": C.build_kww(3).poset,
        "kww4": C.build_kww(4).poset,
        "R1": C.build_R(1).poset,
        "R2": C.build_R(2).poset,
        "planar_hp1": C.build_planar_hp(1).poset,
        "planar_hp2": C.build_planar_hp(2).poset,
        "planar_hp3": C.build_planar_hp(3).poset,
        "lift_simple_pt": C.lift_simple(antichain(1)).poset,
        "lift_simple_c2": C.lift_simple(chain(2)).poset,
        "lift_diag_pt": C.lift_diagonal(antichain(1)).poset,
        "lift_diag_a2": C.lift_diagonal(antichain(2)).poset,
    }
    for i in range(20):
        items[f"random8_{i}"] = random_poset(8, 0.3, rng)
    for i in range(10):
        items[f"random9_{i}"] = random_poset(9, 0.35, rng)
    for i in range(8):
        items[f"width2_{i}"] = random_width2(rng.randint(4, 9), rng)
    return items


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@pytest.fixture
def rng():
    return random.Random(12345)
