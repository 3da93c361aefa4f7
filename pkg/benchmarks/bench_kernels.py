"""Time the oracle kernels with numba against the plain-Python path.

    python benchmarks/bench_kernels.py [--repeat N]

The pure timings come from a child process started with TWOLEVEL_NUMBA=0,
so nested kernel calls are uncompiled too.  Results of both paths are
compared, not just timed.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def workloads():
    from twolevel import kernels
    from itertools import combinations

    cube = kernels.cube_points(3)
    masks = np.arange(2 ** 8, dtype=np.int64)
    pts, opp = kernels.slice_points(3)
    m = np.arange(1, 2 ** len(pts), dtype=np.int64)
    member = ((m[:, None] >> np.arange(len(pts), dtype=np.int64)) & 1).astype(np.bool_)
    pairs = list(combinations(range(5), 2))
    pu = np.array([p[0] for p in pairs], dtype=np.int64)
    pv = np.array([p[1] for p in pairs], dtype=np.int64)
    return {
        "extremal d=3": lambda: kernels.extremal_scan(cube, masks),
        "slice lemma d=3": lambda: kernels.slice_scan(pts, opp, member),
        "graph census n=5": lambda: kernels.graph_census(5, pu, pv),
    }


def digest(out):
    arrs = out if isinstance(out, tuple) else (out,)
    return [int(np.asarray(a, dtype=np.int64).sum()) for a in arrs]


def measure(repeat):
    res = {}
    for name, fn in workloads().items():
        fn()  # compile / warm up
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = fn()
            best = min(best, time.perf_counter() - t0)
        res[name] = {"seconds": best, "digest": digest(out)}
    return res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        json.dump(measure(args.repeat), sys.stdout)
        return 0

    from twolevel._backend import USE_NUMBA
    if not USE_NUMBA:
        print("numba is disabled or missing; nothing to compare", file=sys.stderr)
        return 1
    fast = measure(args.repeat)
    env = dict(os.environ, TWOLEVEL_NUMBA="0")
    proc = subprocess.run([sys.executable, __file__, "--child", "--repeat", "1"],
                          env=env, capture_output=True, text=True, check=True)
    slow = json.loads(proc.stdout)
    print(f"{'workload':<20}{'pure (s)':>12}{'numba (s)':>12}{'speedup':>10}  same result")
    status = 0
    for name in fast:
        p, f = slow[name], fast[name]
        same = p["digest"] == f["digest"]
        status |= not same
        print(f"{name:<20}{p['seconds']:>12.4f}{f['seconds']:>12.4f}"
              f"{p['seconds'] / f['seconds']:>9.1f}x  {same}")
    return status


if __name__ == "__main__":
    sys.exit(main())
