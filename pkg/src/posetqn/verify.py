"""Machine checks of the quantitative claims about ``R_u`` and ``P_w``."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import _kernels
from .constructions import ConstructionRecord, build_P, build_R
from .layout import exact_queue_number, hp_queue_assignment
from .poset import (
    LinearExtension,
    Poset,
    PosetError,
    Realizer,
    dual,
    enumerate_linear_extensions,
    is_order_isomorphism,
    sample_linear_extensions,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 10**6


class InfeasibleExhaustive(RuntimeError):
    pass


@dataclass
class VerificationReport:
    claim: str
    params: dict[str, Any]
    mode: str  # "exhaustive", "sampled", "exact", "arithmetic", "skipped"
    observed: Any
    required: Any
    passed: bool
    witness: Any = None
    count: int | None = None
    seed: int | None = None
    trials: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, Fraction):
                d[k] = str(v)
        return d

    def lines(self) -> list[str]:
        out = [f"claim: {self.claim}"]
        out += [f"{k}: {v}" for k, v in self.params.items()]
        out.append(f"mode: {self.mode}")
        if self.count is not None:
            out.append(f"extensions: {self.count}")
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        out.append(f"observed: {self.observed}")
        out.append(f"required: {self.required}")
        if self.witness is not None:
            out.append(f"witness: {self.witness}")
        out += [f"note: {s}" for s in self.notes]
        out.append(f"result: {'pass' if self.passed else 'FAIL'}")
        return out


def _positions(R: Realizer):
    return R.lx.position.copy(), R.ly.position.copy()


def dx_dy(L: LinearExtension, R: Realizer) -> tuple[int, int]:
    """Longest runs increasing in ``L`` and decreasing in ``R.lx`` (resp. ``R.ly``)."""
    if len(L) != len(R.lx) or len(L) != len(R.ly):
        raise PosetError("extension and realizer live on different ground sets")
    px, py = _positions(R)
    dx, dy = _kernels.dxdy_batch(L.order[None, :].copy(), px, py)
    return int(dx[0]), int(dy[0])


@dataclass(frozen=True)
class ScanResult:
    mode: str
    count: int
    min_sum: int
    worst_sum: LinearExtension
    min_max: int
    worst_max: LinearExtension
    seed: int | None = None


def scan_dxdy(P: Poset, R: Realizer, mode: str = "auto", *, trials: int = 100_000,
              seed: int = 0, limit: int = EXHAUSTIVE_LIMIT, strict: bool = False) -> ScanResult:
    """Minimise ``d_x + d_y`` and ``max(d_x, d_y)`` over linear extensions.

    ``mode="exhaustive"`` visits every extension (raising
    :class:`InfeasibleExhaustive` beyond ``limit`` when ``strict``, else
    falling back to sampling); ``"sampled"`` draws ``trials`` random
    topological sorts; ``"auto"`` tries exhaustive first.
    """
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    px, py = _positions(R)
    if mode != "sampled":
        up_ptr, up_idx, indeg0, *_ = P._csr
        count, msum, osum, mmax, omax, complete = _kernels.scan_extensions_dxdy(
            up_ptr, up_idx, indeg0, px, py, limit)
        if complete:
            return ScanResult("exhaustive", int(count), int(msum), LinearExtension(osum),
                              int(mmax), LinearExtension(omax))
        if mode == "exhaustive" and strict:
            raise InfeasibleExhaustive(f"more than {limit} linear extensions")
        log.warning("more than %d linear extensions; falling back to %d samples", limit, trials)
    orders = sample_linear_extensions(P, trials, seed)
    dx, dy = _kernels.dxdy_batch(orders, px, py)
    s = dx + dy
    mx = np.maximum(dx, dy)
    i, j = int(np.argmin(s)), int(np.argmin(mx))
    return ScanResult("sampled", int(trials), int(s[i]), LinearExtension(orders[i]),
                      int(mx[j]), LinearExtension(orders[j]), seed)


def check_lemma_goodR(u: int, mode: str = "auto", *, trials: int = 100_000, seed: int = 0,
                      limit: int = EXHAUSTIVE_LIMIT, strict: bool = False) -> VerificationReport:
    """Every linear extension of ``R_u`` has ``d_x + d_y >= u + 1``."""
    rec = build_R(u)
    res = scan_dxdy(rec.poset, rec.realizer, mode, trials=trials, seed=seed, limit=limit, strict=strict)
    rep = VerificationReport(
        "lemma-goodR: min dx+dy >= u+1", {"u": u}, res.mode, res.min_sum, u + 1,
        res.min_sum >= u + 1, res.worst_sum.order.tolist(), res.count,
        seed=res.seed, trials=trials if res.mode == "sampled" else None)
    if res.mode == "sampled":
        rep.notes.append("sampled mode can falsify but not prove")
    return rep


@dataclass(frozen=True)
class GuaranteedQ:
    q: int
    worst: LinearExtension
    mode: str
    count: int

    def __iter__(self):
        return iter((self.q, self.worst))


def guaranteed_q(record: ConstructionRecord, mode: str = "auto", **kw) -> GuaranteedQ:
    """Smallest, over linear extensions, of ``max(d_x, d_y)``.

    This is the rainbow size forced between the reinforcement block and one
    of the chains ``X``, ``Y`` attached along ``L_x`` and ``L_y``.
    """
    if record.realizer is None:
        raise PosetError(f"{record.family} record has no realizer")
    res = scan_dxdy(record.poset, record.realizer, mode, **kw)
    return GuaranteedQ(res.min_max, res.worst_max, res.mode, res.count)


def check_es(u: int, mode: str = "auto", **kw) -> VerificationReport:
    """The antichain baseline forces exactly ``ceil(sqrt(u))``."""
    from .constructions import build_antichain_es

    g = guaranteed_q(build_antichain_es(u), mode, **kw)
    target = math.isqrt(u - 1) + 1 if u > 0 else 0
    rep = VerificationReport("es-baseline: q(antichain_u) == ceil(sqrt(u))", {"u": u}, g.mode, g.q,
                             target, g.q == target, g.worst.order.tolist(), g.count)
    if g.mode == "sampled":
        rep.notes.append("sampled minimum is only an upper estimate")
    return rep


def check_reinforcement_q(u: int, mode: str = "auto", **kw) -> VerificationReport:
    g = guaranteed_q(build_R(u), mode, **kw)
    target = (u + 2) // 2
    return VerificationReport("reinforcement: q(R_u) >= ceil((u+1)/2)", {"u": u}, g.mode, g.q, target,
                              g.q >= target, g.worst.order.tolist(), g.count)


def a_before_b(record: ConstructionRecord, order: np.ndarray) -> np.ndarray:
    """Map an extension with ``b`` before ``a`` through the self-duality.

    Reversing the order and applying the duality map gives an extension of
    the same poset with the same largest rainbow in which ``a`` precedes
    ``b``.
    """
    a = record.parts["a"][0]
    b = record.parts["b"][0]
    order = np.asarray(order)
    pos = np.empty_like(order)
    pos[order] = np.arange(order.shape[0])
    if pos[a] < pos[b]:
        return order
    dm = np.asarray(record.dual_map)
    return dm[order[::-1]]


def check_recursion_bound(w: int, mode: str = "auto", *, trials: int = 1000, seed: int = 0,
                          cap: int = 50_000_000, exact_limit: int = 12) -> VerificationReport:
    """``qn(P_w) >= qn(P_{w-2}) + q_{w-2}``.

    Solved exactly when ``P_w`` is small. Otherwise each sampled extension
    (moved to ``a`` before ``b``) is checked to carry a rainbow of at least
    the inner block's rainbow plus ``max(d_x, d_y)`` of the reinforcement
    block, and that ``max(d_x, d_y) >= ceil((w-1)/2)``.
    """
    if w < 3:
        raise PosetError("the recursion starts at w = 3")
    rec = build_P(w)
    inner, R = rec.inner, rec.reinforcement
    q_req = w // 2  # ceil((w-1)/2)
    if mode == "exact" or (mode == "auto" and rec.n <= exact_limit):
        top = exact_queue_number(rec.poset, cap)
        low = exact_queue_number(inner.poset, cap)
        g = guaranteed_q(R, "exhaustive")
        rhs = low.qn + g.q
        rep = VerificationReport(
            "recursion: qn(P_w) >= qn(P_{w-2}) + q_{w-2}", {"w": w}, "exact", top.qn, rhs,
            top.qn >= rhs and top.exact and low.exact, top.best.order.tolist())
        rep.notes.append(f"qn(P_{w - 2}) = {low.qn}, q_{w - 2} = {g.q}")
        if not (top.exact and low.exact):
            rep.notes.append("search cap reached; values are upper bounds")
        return rep

    P = rec.poset
    E = P.covers
    Pi = np.asarray(rec.parts["P_inner"])
    Ri = np.asarray(rec.parts["R"])
    E_in = inner.poset.covers
    px, py = _positions(R.realizer)
    orders = sample_linear_extensions(P, trials, seed)
    orders = np.array([a_before_b(rec, o) for o in orders])
    total = _kernels.max_rainbow_batch(orders, E[:, 0].copy(), E[:, 1].copy())

    # restrictions keep relative order: drop foreign elements, relabel locally
    loc_p = np.full(P.n, -1)
    loc_p[Pi] = np.arange(Pi.size)
    loc_r = np.full(P.n, -1)
    loc_r[Ri] = np.arange(Ri.size)
    inner_orders = np.array([loc_p[o[loc_p[o] >= 0]] for o in orders])
    r_orders = np.array([loc_r[o[loc_r[o] >= 0]] for o in orders])
    if len(E_in):
        inner_rb = _kernels.max_rainbow_batch(inner_orders, E_in[:, 0].copy(), E_in[:, 1].copy())
    else:
        inner_rb = np.zeros(trials, dtype=np.int64)
    dx, dy = _kernels.dxdy_batch(r_orders, px, py)
    forced = np.maximum(dx, dy)
    slack = total - inner_rb
    bad = np.flatnonzero((slack < forced) | (forced < q_req))
    i = int(np.argmin(slack))
    rep = VerificationReport(
        "recursion: rainbow(L) >= rainbow(L|P_{w-2}) + q_{w-2}", {"w": w}, "sampled",
        int(slack.min()), q_req, bad.size == 0, orders[i].tolist(), trials, seed, trials)
    rep.notes.append(f"min forced max(dx,dy) = {int(forced.min())}")
    if bad.size:
        rep.notes.append(f"{bad.size} violating extensions, first index {int(bad[0])}")
    return rep


def theorem_sum(w: int) -> int:
    """``sum(ceil((u+1)/2))`` over ``1 <= u < w`` with ``u = w (mod 2)``."""
    return sum((u + 2) // 2 for u in range(w - 2, 0, -2))


def theorem_closed_form(w: int) -> int:
    s = w // 2
    return math.comb(s + 1, 2) if w % 2 else math.comb(s + 1, 2) - 1


def check_theorem_sums(w: int) -> VerificationReport:
    """Closed form of the lifting sum and the comparison with ``w**2 / 8``.

    Pass requires the sum itself to reach ``w**2 / 8`` (for ``w >= 4``).
    For odd ``w = 2s + 1`` the sum ``s(s+1)/2`` falls short by exactly 1/8;
    the bound is recovered only with an odd-width base of queue-number at
    least 1, which the note reports.
    """
    total = theorem_sum(w)
    closed = theorem_closed_form(w)
    bound = Fraction(w * w, 8)
    ok = total == closed and (w < 4 or total >= bound)
    rep = VerificationReport("sums: closed form and sum >= w^2/8", {"w": w}, "arithmetic", total,
                             bound, ok)
    rep.notes.append(f"closed form = {closed}")
    if w < 4:
        rep.notes.append("w^2/8 bound asserted only for w >= 4")
    elif total < bound:
        base = 1 if w % 2 else 0
        rep.notes.append(f"short by {bound - total}; with base qn >= {base}: "
                         f"{total + base} >= {bound} is {total + base >= bound}")
    return rep


def check_hp_universal(P: Poset, trials: int = 1000, seed: int = 0, *,
                       exhaustive_n: int = 9) -> VerificationReport:
    """The chain-pair queue assignment is nesting-free in every visited extension."""
    qa = hp_queue_assignment(P)
    E = qa.edges
    if P.n <= exhaustive_n:
        orders = np.array([L.order for L in enumerate_linear_extensions(P)], dtype=np.int64)
        mode = "exhaustive"
        seed_ = None
    else:
        orders = sample_linear_extensions(P, trials, seed)
        mode = "sampled"
        seed_ = seed
    if len(E):
        viol = _kernels.queue_violations_batch(orders, E[:, 0].copy(), E[:, 1].copy(), qa.queue_of)
    else:
        viol = np.zeros(len(orders), dtype=np.int64)
    bad = np.flatnonzero(viol)
    return VerificationReport(
        "hp-universal: chain-pair queues never nest", {"n": P.n, "queues": qa.k}, mode,
        int(viol.sum()), 0, bad.size == 0,
        orders[bad[0]].tolist() if bad.size else None, len(orders), seed_,
        trials if mode == "sampled" else None)


def check_self_dual(record: ConstructionRecord) -> VerificationReport:
    params = {"family": record.family, "parameter": record.parameter}
    if record.dual_map is None:
        return VerificationReport("self-dual", params, "skipped", None, None, True,
                                  notes=["no duality map recorded"])
    dm = record.dual_map
    iso = is_order_isomorphism(record.poset, dual(record.poset), dm)
    fixed = all(dm[x] == x for name in ("a", "b") for x in record.parts.get(name, []))
    return VerificationReport("self-dual: dual_map is an isomorphism onto the dual fixing a, b", params,
                              "exact", iso and fixed, True, iso and fixed, None)
