"""Acceptance criteria; each test prints one PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from posetqn import constructions as C
from posetqn import verify as V
from posetqn.layout import exact_queue_number, hp_queue_assignment, max_rainbow, min_queue_partition
from posetqn.poset import dual, enumerate_linear_extensions, sample_linear_extension, width

from conftest import (
    brute_covers,
    brute_lds,
    brute_min_queues,
    brute_qn,
    oracle_extensions,
    random_poset,
    random_width2,
    record_acceptance,
)


def ceil_sqrt(u):
    k = 0
    while k * k < u:
        k += 1
    return k


def test_c01_lemma_exhaustive():
    t0 = time.perf_counter()
    reps = {u: V.check_lemma_goodR(u, "exhaustive", strict=True) for u in (1, 2, 3, 4)}
    elapsed = time.perf_counter() - t0
    # counts from e(R_u) = e(R_{u-1})^2 (2 r(u-1) + 2)
    e = {1: 1}
    for u in (2, 3, 4):
        e[u] = e[u - 1] ** 2 * (2 * C.r_count(u - 1) + 2)
    # independent route for u <= 3: plain recursion + quadratic LDS
    slow = {}
    for u in (1, 2, 3):
        rec = C.build_R(u)
        px, py = rec.realizer.lx.position.tolist(), rec.realizer.ly.position.tolist()
        slow[u] = min(brute_lds([px[v] for v in L]) + brute_lds([py[v] for v in L])
                      for L in oracle_extensions(rec.poset))
    ok = (all(r.passed and r.mode == "exhaustive" and r.count == e[u] for u, r in reps.items())
          and reps[1].observed == 2
          and all(slow[u] == reps[u].observed for u in slow)
          and elapsed < 60)
    mins = {u: r.observed for u, r in reps.items()}
    record_acceptance(1, ok, f"min dx+dy {mins}, e(R_4)={reps[4].count}, {elapsed:.1f}s")
    assert ok


def test_c02_counts():
    r_ok = all(C.build_R(u).n == C.r_count(u) == Fraction(3, 2) * 2 ** u - 2 for u in range(1, 11))
    p = {1: 1, 2: 2}
    for w in range(3, 10):
        p[w] = 2 * p[w - 2] + 6 * (Fraction(3, 2) * 2 ** (w - 2) - 2) + 2
    built = {w: C.build_P(w).n for w in range(1, 10)}
    ok = r_ok and all(built[w] == p[w] for w in p)
    record_acceptance(2, ok, f"r(1..10) ok={r_ok}, p(1..9)={[built[w] for w in range(1, 10)]}")
    assert ok


def _certified(P, wr):
    lt = P.lt
    anti = wr.antichain
    anti_ok = len(set(anti)) == len(anti) == wr.w and not (lt[np.ix_(anti, anti)]).any()
    chains_ok = wr.chains.k == wr.w and all(
        all(lt[a, b] for a, b in zip(c, c[1:])) for c in
        [sorted(ch, key=lambda x: int(lt[:, x].sum())) for ch in wr.chains.chains()])
    covered = sorted(x for ch in wr.chains.chains() for x in ch) == list(range(P.n))
    return anti_ok and chains_ok and covered


def test_c03_width_certificates():
    res = {}
    for u in range(1, 9):
        P = C.build_R(u).poset
        wr = width(P)
        res[f"R{u}"] = wr.w == u and _certified(P, wr)
    for w in range(1, 8):
        P = C.build_P(w).poset
        wr = width(P)
        res[f"P{w}"] = wr.w == w and _certified(P, wr)
    bad = [k for k, v in res.items() if not v]
    ok = not bad
    record_acceptance(3, ok, f"R_1..R_8, P_1..P_7 certified; failures={bad}")
    assert ok


def _iso_direct(P, f):
    n = P.n
    D = dual(P)
    return sorted(f) == list(range(n)) and all(
        P.lt[i, j] == D.lt[f[i], f[j]] for i in range(n) for j in range(n))


def test_c04_self_duality():
    recs = [C.build_R(u) for u in range(1, 7)] + [C.build_P(w) for w in range(1, 7)]
    bad = []
    for rec in recs:
        fixed = all(rec.dual_map[x] == x for k in ("a", "b") for x in rec.parts.get(k, []))
        if not (V.check_self_dual(rec).passed and fixed and _iso_direct(rec.poset, rec.dual_map)):
            bad.append(f"{rec.family}{rec.parameter}")
    ok = not bad
    record_acceptance(4, ok, f"R_1..R_6, P_1..P_6 via recorded maps; failures={bad}")
    assert ok


def test_c05_erdos_szekeres():
    t0 = time.perf_counter()
    got = {u: V.guaranteed_q(C.build_antichain_es(u), "exhaustive", strict=True) for u in range(1, 10)}
    elapsed = time.perf_counter() - t0
    ok = (all(g.q == ceil_sqrt(u) and g.count == math.factorial(u) for u, g in got.items())
          and elapsed < 60)
    record_acceptance(5, ok, f"q = {[g.q for g in got.values()]}, {elapsed:.1f}s")
    assert ok


def test_c06_reinforcement():
    got = {u: V.guaranteed_q(C.build_R(u), "exhaustive", strict=True).q for u in (1, 2, 3, 4)}
    ok = all(q >= (u + 2) // 2 for u, q in got.items())
    record_acceptance(6, ok, f"q(R_u) = {got}, required ceil((u+1)/2)")
    assert ok


def test_c07_hp_universal(corpus):
    total = 0
    bad = []
    for name, P in corpus.items():
        rep = V.check_hp_universal(P, exhaustive_n=9)
        total += rep.observed
        if not (rep.passed and rep.mode == "exhaustive"):
            bad.append(name)
    for rec in (C.build_R(4), C.build_P(3), C.build_P(4)):
        rep = V.check_hp_universal(rec.poset, trials=1000, seed=0, exhaustive_n=0)
        total += rep.observed
        if not (rep.passed and rep.count == 1000):
            bad.append(f"{rec.family}{rec.parameter}")
    ok = total == 0 and not bad
    record_acceptance(7, ok, f"{len(corpus)} corpus posets exhaustive + R_4, P_3, P_4 x 1000; "
                             f"violations={total}")
    assert ok


def test_c08_fixed_order_duality():
    rng = random.Random(808)
    checked = 0
    mismatches = 0
    while checked < 200:
        P = random_poset(rng.randint(3, 10), rng.uniform(0.15, 0.5), rng)
        E = P.covers
        if not 0 < len(E) <= 10:
            continue
        L = sample_linear_extension(P, rng.randrange(2**32))
        qa = min_queue_partition(L, E)
        k = max_rainbow(L, E)[0]
        if not (qa.k == k == brute_min_queues(L.order.tolist(), E.tolist()) and qa.violations(L) == 0):
            mismatches += 1
        checked += 1
    ok = mismatches == 0
    record_acceptance(8, ok, f"{checked} pairs, mismatches={mismatches}")
    assert ok


def test_c09_exact_solver(corpus):
    bad = []
    for name, P in corpus.items():
        res = exact_queue_number(P)
        if not (res.exact and res.qn == brute_qn(P, oracle_extensions(P))):
            bad.append(name)
    kww = {w: exact_queue_number(C.build_kww(w).poset).qn for w in (2, 3)}
    rng = random.Random(909)
    w2 = [exact_queue_number(random_width2(rng.randint(4, 10), rng)).qn for _ in range(50)]
    ok = not bad and kww == {2: 2, 3: 3} and max(w2) <= 2
    record_acceptance(9, ok, f"{len(corpus)} corpus posets match brute force (failures={bad}); "
                             f"qn(K_ww)={kww}; width-2 max qn={max(w2)}")
    assert ok


def test_c10_recursion_w3_and_lift():
    p3 = exact_queue_number(C.build_P(3).poset)
    lift = exact_queue_number(C.lift_simple(C.build_kww(2).poset).poset)
    q1 = V.guaranteed_q(C.build_R(1)).q
    p1 = exact_queue_number(C.build_P(1).poset).qn
    ok = p3.exact and lift.exact and p3.qn >= p1 + q1 == 1 and lift.qn >= 3
    record_acceptance(10, ok, f"qn(P_3)={p3.qn} >= {p1}+{q1}; qn(lift_simple(K_22))={lift.qn} >= 3")
    assert ok


def test_c11_theorem_arithmetic():
    short = []
    for w in range(4, 101):
        s = w // 2
        closed = math.comb(s + 1, 2) - (0 if w % 2 else 1)
        if not (V.theorem_sum(w) == V.theorem_closed_form(w) == closed):
            short.append((w, "closed form mismatch"))
        elif Fraction(closed) < Fraction(w * w, 8):
            short.append(w)
    ok = not short
    detail = "all w in 4..100" if ok else (
        f"{len(short)} widths fall short, all odd, e.g. w=5: 3 < 25/8; first {short[:4]}")
    record_acceptance(11, ok, detail)
    assert ok
