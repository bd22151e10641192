"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own subprocess (the backend is fixed at import
time by ``POSETQN_NO_NUMBA``). Workloads are run once to warm up, then
timed; the two result sets must agree exactly.

    python benchmarks/bench_kernels.py           # quick sizes
    python benchmarks/bench_kernels.py --full    # R_4 scan, 8! ES scan
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workloads(full):
    from posetqn import constructions as C
    from posetqn import verify as V
    from posetqn.layout import exact_queue_number
    from posetqn.poset import sample_linear_extensions, width
    from posetqn import _kernels as K

    def scan_R(u):
        rec = C.build_R(u)
        r = V.scan_dxdy(rec.poset, rec.realizer, "exhaustive", strict=True)
        return [r.count, r.min_sum, r.min_max, r.worst_sum.order.tolist()]

    def es(u):
        g = V.guaranteed_q(C.build_antichain_es(u), "exhaustive", strict=True)
        return [g.q, g.count]

    def sample_rainbows(w, trials):
        P = C.build_P(w).poset
        orders = sample_linear_extensions(P, trials, 0)
        E = P.covers
        rb = K.max_rainbow_batch(orders, E[:, 0].copy(), E[:, 1].copy())
        return [int(rb.min()), int(rb.sum()), orders[0].tolist()]

    def exact(rec):
        res = exact_queue_number(rec.poset)
        return [res.qn, res.nodes, res.best.order.tolist()]

    def wid(u):
        wr = width(C.build_R(u).poset)
        return [wr.w, sorted(wr.antichain)]

    jobs = {
        "scan dxdy R_3 (160 ext)": lambda: scan_R(3),
        "ES scan u=7 (5040 ext)": lambda: es(7),
        "sample+rainbow P_4 x2000": lambda: sample_rainbows(4, 2000),
        "exact qn P_3": lambda: exact(C.build_P(3)),
        "exact qn lift(K_22)": lambda: exact(C.lift_simple(C.build_kww(2).poset)),
        "width R_6 (94 elements)": lambda: wid(6),
    }
    if full:
        jobs["scan dxdy R_4 (563200 ext)"] = lambda: scan_R(4)
        jobs["ES scan u=8 (40320 ext)"] = lambda: es(8)
    return jobs


def worker(full):
    from posetqn import _kernels as K

    out = {"backend": K.BACKEND, "jobs": {}}
    for name, fn in workloads(full).items():
        t0 = time.perf_counter()
        first = fn()
        warm = time.perf_counter() - t0
        t0 = time.perf_counter()
        again = fn()
        hot = time.perf_counter() - t0
        assert first == again, name
        out["jobs"][name] = {"result": first, "first": warm, "hot": hot}
    print(json.dumps(out))


def run_backend(no_numba, full):
    env = dict(os.environ, POSETQN_NO_NUMBA="1" if no_numba else "0")
    cmd = [sys.executable, __file__, "--worker"] + (["--full"] if full else [])
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.full)
        return 0

    fast = run_backend(False, args.full)
    slow = run_backend(True, args.full)
    print(f"{'workload':32s} {fast['backend']:>12s} {slow['backend']:>12s} {'speedup':>9s}  same")
    same_all = True
    for name, f in fast["jobs"].items():
        s = slow["jobs"][name]
        same = f["result"] == s["result"]
        same_all &= same
        print(f"{name:32s} {f['hot'] * 1e3:10.2f}ms {s['hot'] * 1e3:10.2f}ms "
              f"{s['hot'] / max(f['hot'], 1e-9):8.1f}x  {'yes' if same else 'NO'}")
    print(f"numba first-call (compile or cache load) total: "
          f"{sum(j['first'] - j['hot'] for j in fast['jobs'].values()):.2f}s")
    print("results identical across backends" if same_all else "RESULTS DIFFER")
    return 0 if same_all else 1


if __name__ == "__main__":
    sys.exit(main())
