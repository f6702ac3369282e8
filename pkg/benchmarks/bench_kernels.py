"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S] [--count K]

Both paths are called directly (the ORDHULL_NO_NUMBA switch only selects
which one the engine binds), on the same random instances, and their
outputs are checked to be identical before timings are reported.
"""
import argparse
import statistics
import time

import numpy as np

from ordhull import kernels
from ordhull.envelope import CLASSES, workspace
from ordhull.verifier import InstanceFamily, enumerate_instances


def timed(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=40)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    fam = InstanceFamily(4, 4, 5, mode="random", seed=args.seed, count=args.count)
    insts = [i for i in enumerate_instances(fam)]
    cases = []
    for inst in insts:
        ws = workspace(inst)
        cases.append((inst, ws, ws.tables))
    n_tables = sum(len(fs) for _, _, fs in cases)

    def membership(impl):
        return lambda: [impl(fs, inst.hx, inst.hS, ws.leq, ws.member) for inst, ws, fs in cases]

    def lower(numba):
        def run():
            out = []
            for _, ws, fs in cases:
                for cls in CLASSES:
                    cands = ws.candidates(cls)
                    if numba:
                        out.append(kernels.lower_envelope_numba(fs, cands, ws.leq, ws.join, ws.bottom))
                    else:
                        out.append(kernels.lower_envelope_numpy(fs, cands, ws.leq, ws.join, ws.bottom,
                                                                ws.sup_table))
            return out
        return run

    def pairs(numba):
        impl = kernels.closed_pairs_numba if numba else kernels.closed_pairs_numpy
        def run():
            out = []
            for inst, ws, fs in cases:
                members = ws.candidates("SUB")
                w = ws.n ** np.arange(len(inst.X), dtype=np.int64)
                flags = np.ascontiguousarray(ws.table_classes[:, 2])
                start = np.zeros(len(members), dtype=np.int64)
                out.append(impl(members, start, members, ws.join, w, flags))
            return out
        return run

    rows = []
    for name, a, b in (("membership", membership(kernels.membership_numba), membership(kernels.membership_numpy)),
                       ("lower envelope", lower(True), lower(False)),
                       ("closure pairs", pairs(True), pairs(False))):
        a()  # compile / warm caches
        ra, ta = timed(a, args.repeat)
        rb, tb = timed(b, args.repeat)
        assert all(np.array_equal(x, y) for x, y in zip(ra, rb)), f"{name}: backends disagree"
        rows.append((name, ta, tb))

    print(f"{len(insts)} random instances, {n_tables} function tables, median of {args.repeat} runs")
    print(f"{'kernel':<16}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name, ta, tb in rows:
        print(f"{name:<16}{ta:>12.4f}{tb:>12.4f}{tb / ta:>9.1f}x")


if __name__ == "__main__":
    main()
