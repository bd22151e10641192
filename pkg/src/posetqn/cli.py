"""Command-line frontend.

Exit codes: 0 success / all checks passed, 1 a verification failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import io, verify
from .layout import exact_queue_number, hp_queue_assignment, max_rainbow, min_queue_partition
from .poset import LinearExtension, PosetError, is_linear_extension, sample_linear_extension, width

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
           "#7f7f7f", "#bcbd22", "#17becf"]


class UsageError(Exception):
    pass


def _emit(args, data: dict) -> None:
    if args.json:
        print(json.dumps(data, indent=1, default=str))
    else:
        for k, v in data.items():
            print(f"{k}: {v}")


def _extension(rec, text: str) -> LinearExtension:
    try:
        L = LinearExtension([int(t) for t in text.replace(" ", "").split(",") if t])
    except ValueError as exc:
        raise UsageError(f"bad extension {text!r}: {exc}") from None
    if len(L) != rec.poset.n or not is_linear_extension(rec.poset, L):
        raise UsageError(f"{text!r} is not a linear extension of the poset")
    return L


def cmd_construct(args) -> int:
    rec = io.build(args.family, args.parameter)
    if args.output:
        io.save(rec, args.output)
    else:
        print(json.dumps(io.record_to_doc(rec)))
        return 0
    _emit(args, {"family": args.family, "parameter": args.parameter, "n": rec.n,
                 "covers": len(rec.poset.covers), "output": args.output})
    return 0


def cmd_analyze(args) -> int:
    rec = io.resolve(args.input)
    P = rec.poset
    out: dict = {"n": P.n}
    flags = [args.width, args.covers, args.qn_exact, args.qn_upper_hp, args.rainbow is not None]
    if not any(flags):
        args.width = args.covers = True
    if args.width:
        wr = width(P)
        out["width"] = wr.w
        out["antichain"] = wr.antichain
        out["chains"] = wr.chains.chains()
    if args.covers:
        out["cover_count"] = len(P.covers)
        out["covers"] = P.covers.tolist()
    if args.qn_upper_hp:
        qa = hp_queue_assignment(P)
        w = width(P).w
        out["qn_upper_hp"] = w * w
        out["hp_queues"] = {f"Q{q // w},{q % w}": es for q, es in sorted(qa.queues().items())}
    if args.qn_exact:
        res = exact_queue_number(P, args.cap)
        out["qn"] = res.qn
        out["qn_exact"] = res.exact
        if not res.exact:
            out["qn_lower"] = res.lower
        out["best_extension"] = res.best.order.tolist()
    if args.rainbow is not None:
        L = _extension(rec, args.rainbow)
        k, wit = max_rainbow(L, P.covers)
        out["rainbow"] = k
        out["rainbow_witness"] = wit.edges
    _emit(args, out)
    return 0


def cmd_rainbow(args) -> int:
    rec = io.resolve(args.input)
    L = _extension(rec, args.extension)
    k, wit = max_rainbow(L, rec.poset.covers)
    qa = min_queue_partition(L, rec.poset.covers)
    _emit(args, {"rainbow": k, "witness": wit.edges, "queues": qa.k})
    return 0


def _mode(args) -> str:
    if args.exhaustive and args.sampled:
        raise UsageError("--exhaustive and --sampled are exclusive")
    return "exhaustive" if args.exhaustive else "sampled" if args.sampled else "auto"


def cmd_verify(args) -> int:
    mode = _mode(args)
    kw = {"trials": args.trials if args.trials is not None else 100_000, "seed": args.seed,
          "limit": args.limit}
    try:
        if args.suite == "lemma2":
            rep = verify.check_lemma_goodR(args.u or 3, mode, strict=args.strict, **kw)
        elif args.suite == "es":
            rep = verify.check_es(args.u or 4, mode, strict=args.strict, **kw)
        elif args.suite == "recursion":
            rmode = {"exhaustive": "exact"}.get(mode, mode)
            rep = verify.check_recursion_bound(args.w or 3, rmode, trials=args.trials or 1000,
                                               seed=args.seed, cap=args.cap)
        elif args.suite == "hp":
            rec = io.resolve(args.input or "ru-3")
            rep = verify.check_hp_universal(rec.poset, args.trials or 1000, args.seed)
        elif args.suite == "selfdual":
            rep = verify.check_self_dual(io.resolve(args.input or "pw-3"))
        else:
            rep = verify.check_theorem_sums(args.w or 4)
    except verify.InfeasibleExhaustive as exc:
        raise UsageError(f"{exc} (drop --strict to fall back to sampling)") from None
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1, default=str))
    else:
        print("\n".join(rep.lines()))
    return 0 if rep.passed else 1


def to_dot(rec) -> str:
    P = rec.poset
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=circle];"]
    for v in range(P.n):
        label = P.labels[v] if P.labels else str(v)
        lines.append(f'  {v} [label="{label}"];')
    for u, v in P.covers.tolist():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_arc_dot(rec, L: LinearExtension) -> str:
    """Vertices on a line in extension order, arcs coloured by queue."""
    P = rec.poset
    qa = min_queue_partition(L, P.covers)
    lines = ["digraph arcs {", "  layout=neato;", "  splines=curved;",
             "  node [shape=circle, pin=true];", f'  label="{qa.k} queues";']
    for i, v in enumerate(L):
        lines.append(f'  {v} [pos="{i},0!"];')
    for (u, v), q in zip(P.covers.tolist(), qa.queue_of.tolist()):
        lines.append(f'  {u} -> {v} [queue={q}, color="{PALETTE[q % len(PALETTE)]}", arrowhead=none];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export(args) -> int:
    rec = io.resolve(args.input)
    if args.format == "dot":
        text = to_dot(rec)
    else:
        if args.extension:
            L = _extension(rec, args.extension)
        elif rec.poset.n <= 15:
            L = exact_queue_number(rec.poset, args.cap).best
        else:
            L = sample_linear_extension(rec.poset, args.seed)
        text = to_arc_dot(rec, L)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="posetqn", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int)
    common.add_argument("--cap", type=int, default=50_000_000, help="search node cap for the exact solver")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a poset family member")
    c.add_argument("family", choices=sorted(io.FAMILIES) + sorted(io.LIFTS))
    c.add_argument("parameter", help="integer parameter, or a base spec such as kww-2 for lifts")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", parents=[common], help="report width, covers, queue-numbers")
    a.add_argument("input", help="poset file or family spec like ru-3")
    a.add_argument("--width", action="store_true")
    a.add_argument("--covers", action="store_true")
    a.add_argument("--qn-exact", action="store_true")
    a.add_argument("--qn-upper-hp", action="store_true")
    a.add_argument("--rainbow", metavar="EXT", help="comma-separated linear extension")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("rainbow", parents=[common], help="largest rainbow under a given extension")
    r.add_argument("input")
    r.add_argument("extension")
    r.set_defaults(func=cmd_rainbow)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=["lemma2", "es", "recursion", "hp", "selfdual", "sums"])
    v.add_argument("--u", type=int)
    v.add_argument("--w", type=int)
    v.add_argument("--input", help="poset file or family spec (hp, selfdual)")
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--sampled", action="store_true")
    v.add_argument("--strict", action="store_true", help="fail instead of falling back to sampling")
    v.add_argument("--limit", type=int, default=verify.EXHAUSTIVE_LIMIT,
                   help="extension count above which exhaustive scans give up")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", parents=[common], help="write a DOT diagram or arc diagram")
    e.add_argument("input")
    e.add_argument("--format", choices=["dot", "arc-diagram-dot"], default="dot")
    e.add_argument("--extension")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, PosetError, OSError) as exc:
        print(f"posetqn: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
