"""
Generators for the poset families.

Each builder returns a :class:`ConstructionRecord` holding the poset, named
parts (disjoint, covering the ground set), and when defined a realizer and a
self-duality map.

Element layouts are part of the contract:

* ``build_R(u)``: ``[Q1, a, Q2, b]`` with ``Q1``, ``Q2`` copies of ``R_{u-1}``.
* ``build_P(w)``: ``[R, X, Y, P_inner, a, P_inner_dual, Y_dual, X_dual,
  R_dual, b]``.
* ``build_planar_hp(r)``: ``[R, X, Y]``.
* ``lift_simple(P)``: ``[bottom, P1, P2, top, b]`` (optionally a separator
  ``s`` between the copies: ``[bottom, P1, s, P2, top, b]``).
* ``lift_diagonal(P)``: ``[s1, s2, P1, P2, t1, t2]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .poset import (
    LinearExtension,
    Poset,
    PosetError,
    Realizer,
    antichain,
    chain,
    compose_parallel,
    compose_series,
    dual,
    from_relations,
    is_isomorphic,
    width,
)


@dataclass(frozen=True)
class ConstructionRecord:
    family: str
    parameter: object
    poset: Poset
    parts: dict[str, list[int]] = field(default_factory=dict)
    realizer: Realizer | None = None
    dual_map: list[int] | None = None
    inner: "ConstructionRecord | None" = field(default=None, repr=False)
    reinforcement: "ConstructionRecord | None" = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.poset.n

    def part(self, name: str) -> list[int]:
        return self.parts[name]

    def parts_partition(self) -> bool:
        seen = sorted(x for xs in self.parts.values() for x in xs)
        return seen == list(range(self.poset.n))


def r_count(u: int) -> int:
    """Element count of ``R_u``: ``3 * 2**(u-1) - 2``."""
    return 3 * 2 ** (u - 1) - 2


def p_count(w: int, base_count: int | None = None) -> int:
    if w <= 2:
        return base_count if base_count is not None else w
    return 2 * p_count(w - 2, base_count) + 6 * r_count(w - 2) + 2


@lru_cache(maxsize=None)
def _build_R(u: int):
    # returns (lt matrix, lx order, ly order, dual map) as plain tuples/arrays
    if u == 1:
        return np.zeros((1, 1), dtype=bool), (0,), (0,), (0,)
    lt_q, lx_q, ly_q, dm_q = _build_R(u - 1)
    r = lt_q.shape[0]
    Q = Poset(lt_q)
    one = antichain(1)
    P = compose_parallel(compose_series(compose_series(Q, one), Q), one)
    a, b = r, 2 * r + 1
    q2 = r + 1
    lx = (b, *lx_q, a, *(q2 + i for i in lx_q))
    ly = (*ly_q, a, *(q2 + i for i in ly_q), b)
    # Q1 and Q2 swap through the inner duality; a and b stay put
    dm = (*(q2 + i for i in dm_q), a, *dm_q, b)
    return P.lt, lx, ly, dm


def build_R(u: int) -> ConstructionRecord:
    """The reinforcement poset ``R_u`` with its realizer ``(L_x, L_y)``.

    ``R_1`` is a point. ``R_u`` stacks two copies of ``R_{u-1}`` in series
    with a separating element ``a`` and puts an isolated ``b`` next to them.
    ``L_x = b, L_x(Q1), a, L_x(Q2)`` and ``L_y = L_y(Q1), a, L_y(Q2), b``.
    """
    if u < 1:
        raise PosetError("u must be at least 1")
    lt, lx, ly, dm = _build_R(u)
    P = Poset(lt)
    if u == 1:
        parts = {"b": [0]}
    else:
        r = r_count(u - 1)
        parts = {
            "Q1": list(range(r)),
            "a": [r],
            "Q2": list(range(r + 1, 2 * r + 1)),
            "b": [2 * r + 1],
        }
    return ConstructionRecord(
        "ru", u, P, parts,
        Realizer(LinearExtension(lx), LinearExtension(ly)),
        list(dm),
    )


def build_antichain_es(u: int) -> ConstructionRecord:
    """``u``-antichain with realizer (identity, reverse)."""
    if u < 1:
        raise PosetError("u must be at least 1")
    ident = list(range(u))
    return ConstructionRecord(
        "antichain-es", u, antichain(u), {"R": ident},
        Realizer(LinearExtension(ident), LinearExtension(ident[::-1])),
        None,
    )


def build_kww(w: int) -> ConstructionRecord:
    """Height-2 poset whose cover graph is ``K_{w,w}``."""
    if w < 1:
        raise PosetError("w must be at least 1")
    pairs = [(i, w + j) for i in range(w) for j in range(w)]
    P = from_relations(2 * w, pairs)
    return ConstructionRecord("kww", w, P, {"bottom": list(range(w)), "top": list(range(w, 2 * w))})


def build_chain(n: int) -> ConstructionRecord:
    return ConstructionRecord("chain", n, chain(n), {"C": list(range(n))})


def build_antichain(n: int) -> ConstructionRecord:
    return ConstructionRecord("antichain", n, antichain(n), {"A": list(range(n))})


def _base_record(w: int, base: Poset | None) -> ConstructionRecord:
    if base is None:
        base = antichain(w)
    if width(base).w != w:
        raise PosetError(f"base poset must have width {w}")
    ok, dm = is_isomorphic(base, dual(base))
    return ConstructionRecord("pw", w, base, {"base": list(range(base.n))}, None, dm if ok else None)


def build_P(w: int, base: Poset | None = None, *, with_a: bool = True) -> ConstructionRecord:
    """The lifted poset ``P_w``.

    ``base`` seeds the recursion at width 1 or 2 (matching the parity of
    ``w``); it defaults to an antichain of that width. For ``w >= 3`` the
    record holds ``P_{w-2}`` as ``inner`` and ``R_{w-2}`` as
    ``reinforcement``. With ``with_a=False`` the element ``a`` is dropped and
    every element of ``P_inner`` is put directly below every element of
    ``P_inner_dual``.
    """
    if w < 1:
        raise PosetError("w must be at least 1")
    if w <= 2:
        return _base_record(w, base)
    if base is not None and width(base).w != (1 if w % 2 else 2):
        raise PosetError("base width must be 1 for odd w and 2 for even w")
    inner = build_P(w - 2, base, with_a=with_a)
    Rrec = build_R(w - 2)
    Pin, R = inner.poset, Rrec.poset
    p, r = Pin.n, R.n
    lx = Rrec.realizer.lx.order.tolist()
    ly = Rrec.realizer.ly.order.tolist()

    blocks = {}
    off = 0
    for name, size in [("R", r), ("X", r), ("Y", r), ("P_inner", p), ("a", 1 if with_a else 0),
                       ("P_inner_dual", p), ("Y_dual", r), ("X_dual", r), ("R_dual", r), ("b", 1)]:
        blocks[name] = list(range(off, off + size))
        off += size
    n = off
    Ri, Xi, Yi, Pi = blocks["R"], blocks["X"], blocks["Y"], blocks["P_inner"]
    Rd, Xd, Yd, Pd = blocks["R_dual"], blocks["X_dual"], blocks["Y_dual"], blocks["P_inner_dual"]
    b = blocks["b"][0]

    rel = []
    for i, j in R.pairs().tolist():
        rel.append((Ri[i], Ri[j]))
        rel.append((Rd[j], Rd[i]))
    for i, j in Pin.pairs().tolist():
        rel.append((Pi[i], Pi[j]))
        rel.append((Pd[j], Pd[i]))
    for k in range(r - 1):
        rel += [(Xi[k], Xi[k + 1]), (Yi[k], Yi[k + 1]), (Xd[k + 1], Xd[k]), (Yd[k + 1], Yd[k])]
    rel += [(b, Xi[0]), (b, Yi[0]), (Xd[0], b), (Yd[0], b)]
    if with_a:
        a = blocks["a"][0]
        rel += [(x, a) for x in Pi] + [(a, x) for x in Pd]
    else:
        rel += [(x, y) for x in Pi for y in Pd]
    rel += [(x, y) for x in Ri for y in Pi] + [(y, x) for x in Rd for y in Pd]
    for k in range(r):
        rel.append((Ri[lx[k]], Xi[k]))
        rel.append((Ri[ly[k]], Yi[k]))
        rel.append((Xd[k], Rd[lx[k]]))
        rel.append((Yd[k], Rd[ly[k]]))
    P = from_relations(n, rel)

    dm = list(range(n))
    for A, B in [(Ri, Rd), (Xi, Xd), (Yi, Yd), (Pi, Pd)]:
        for s, t in zip(A, B):
            dm[s], dm[t] = t, s
    return ConstructionRecord("pw", w, P, blocks, None, dm, inner=inner, reinforcement=Rrec)


def build_planar_hp(r: int) -> ConstructionRecord:
    """``r``-antichain with an upward-matched chain ``X`` and a
    downward-matched chain ``Y``.

    ``x_i`` covers the ``i``-th element of ``L_x`` (identity); the ``i``-th
    element of ``L_y`` (reverse) covers ``y_i``. The whole poset carries
    no realizer; the antichain's realizer lives on ``reinforcement``.
    """
    if r < 1:
        raise PosetError("r must be at least 1")
    R = list(range(r))
    X = list(range(r, 2 * r))
    Y = list(range(2 * r, 3 * r))
    lx, ly = R, R[::-1]  # realizer of the antichain R
    rel = [(X[i], X[i + 1]) for i in range(r - 1)] + [(Y[i], Y[i + 1]) for i in range(r - 1)]
    rel += [(lx[i], X[i]) for i in range(r)]
    rel += [(Y[i], ly[i]) for i in range(r)]
    P = from_relations(3 * r, rel)
    return ConstructionRecord("planar-hp", r, P, {"R": R, "X": X, "Y": Y},
                              reinforcement=build_antichain_es(r))


def _two_copies(P: Poset, offset1: int, offset2: int, rel: list) -> None:
    for i, j in P.pairs().tolist():
        rel.append((offset1 + i, offset1 + j))
        rel.append((offset2 + i, offset2 + j))


def lift_simple(P: Poset, *, separator: bool = False) -> ConstructionRecord:
    """Two series copies of ``P`` between a new bottom and top, plus ``b``
    covering the bottom and covered by the top.

    With ``separator=True`` an element ``s`` is put between the copies.
    """
    if P.n == 0:
        raise PosetError("P must be nonempty")
    p = P.n
    bottom = 0
    c1 = 1
    s = c1 + p
    c2 = s + (1 if separator else 0)
    top = c2 + p
    b = top + 1
    n = b + 1
    rel = []
    _two_copies(P, c1, c2, rel)
    if separator:
        rel += [(c1 + i, s) for i in range(p)] + [(s, c2 + i) for i in range(p)]
    else:
        rel += [(c1 + i, c2 + j) for i in range(p) for j in range(p)]
    rel += [(bottom, c1 + i) for i in range(p)] + [(c2 + i, top) for i in range(p)]
    rel += [(bottom, b), (b, top)]
    parts = {"bottom": [bottom], "P1": list(range(c1, c1 + p)), "P2": list(range(c2, c2 + p)),
             "top": [top], "b": [b]}
    if separator:
        parts["s"] = [s]
    return ConstructionRecord("lift-simple", None, from_relations(n, rel), parts)


def lift_diagonal(P: Poset) -> ConstructionRecord:
    """Two series copies ``P1 < P2`` with added ``s1 < P1``, ``P2 < t1`` and
    a second chain ``s2 < t2`` joined to the first by the crossing covers
    ``s1 -> t2`` and ``s2 -> t1``.

    In any linear extension either ``s2`` precedes all of ``P2`` (then
    ``s2 -> t1`` spans ``P2``) or it follows some of ``P2``, hence all of
    ``P1``, and so does ``t2`` (then ``s1 -> t2`` spans ``P1``).
    """
    if P.n == 0:
        raise PosetError("P must be nonempty")
    p = P.n
    s1, s2 = 0, 1
    c1, c2 = 2, 2 + p
    t1, t2 = 2 + 2 * p, 3 + 2 * p
    n = 4 + 2 * p
    rel = []
    _two_copies(P, c1, c2, rel)
    rel += [(c1 + i, c2 + j) for i in range(p) for j in range(p)]
    rel += [(s1, c1 + i) for i in range(p)] + [(c2 + i, t1) for i in range(p)]
    rel += [(s2, t2), (s1, t2), (s2, t1)]
    parts = {"s1": [s1], "s2": [s2], "P1": list(range(c1, c1 + p)),
             "P2": list(range(c2, c2 + p)), "t1": [t1], "t2": [t2]}
    return ConstructionRecord("lift-diagonal", None, from_relations(n, rel), parts)
