#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times trajectory generation, the zone scans, and a full replication with
each backend, verifies the outputs are identical, and prints a table.

    python benchmarks/bench_backends.py [--steps N] [--reps K]
"""

import argparse
import time

import numpy as np

from hosim import _pykernel, backend
from hosim.engine import CellConfig, run_replication

try:
    from hosim import _kernel
except ImportError:
    _kernel = None

FIELD = (19000.0, 19000.0)


def time_call(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_kernel(kmod, steps):
    times = {}
    times["manhattan"], mh = time_call(
        lambda: kmod.traj_manhattan(42, steps, *FIELD, 1000.0, 10.0)
    )
    times["random_waypoint"], _ = time_call(
        lambda: kmod.traj_random_waypoint(42, steps, *FIELD, 10.0)
    )
    times["random_direction"], _ = time_call(
        lambda: kmod.traj_random_direction(42, steps, *FIELD, 10.0)
    )
    xs = np.asarray(mh[0])
    ys = np.asarray(mh[1])

    def scan_all():
        i = 0
        hits = 0
        while True:
            i = kmod.first_reach(xs, ys, i + 1, 9000.0, 9000.0, 525.0**2, False)
            if i < 0:
                return hits
            i = kmod.first_below(xs, ys, i, 9000.0, 9000.0, 375.0**2)
            if i < 0:
                return hits
            hits += 1

    times["zone_scans"], _ = time_call(scan_all)
    return times, (np.asarray(mh[0]), np.asarray(mh[1]))


def bench_replication(kmod, steps):
    backend.set_kernel(kmod)
    cfg = CellConfig(model="manhattan", steps=steps, replications=1)
    t, out = time_call(lambda: run_replication(cfg, 0))
    records, gaps, reassoc = out
    digest = [(r.step, r.serving, r.selected, r.ground_truth) for r in records]
    return t, digest


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--steps", type=int, default=10000)
    args = parser.parse_args()

    if _kernel is None:
        print("compiled kernel not available; run `python setup.py build_ext"
              " --inplace` first")
        return 1

    py_times, py_traj = bench_kernel(_pykernel, args.steps)
    c_times, c_traj = bench_kernel(_kernel, args.steps)
    assert np.array_equal(py_traj[0], c_traj[0]), "backend trajectories differ"

    py_rep, py_digest = bench_replication(_pykernel, args.steps)
    c_rep, c_digest = bench_replication(_kernel, args.steps)
    assert py_digest == c_digest, "backend replications differ"
    backend.set_kernel(_kernel)

    print(f"{args.steps} steps per trajectory; best of 3 runs\n")
    print(f"{'kernel':<22}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name in py_times:
        p, c = py_times[name], c_times[name]
        print(f"{name:<22}{p * 1e3:>10.2f}ms{c * 1e3:>10.2f}ms{p / c:>9.1f}x")
    print(f"{'full replication':<22}{py_rep * 1e3:>10.2f}ms{c_rep * 1e3:>10.2f}ms"
          f"{py_rep / c_rep:>9.1f}x")
    print("\noutputs verified identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
