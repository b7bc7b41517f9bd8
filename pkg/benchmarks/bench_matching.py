#!/usr/bin/env python3
"""Benchmark: compiled matching kernel vs the pure-Python fallback.

Two workloads:

* raw kernel: perfect-matching enumeration on synthetic port graphs of
  growing size and density (the solver's hot inner loop in isolation);
* end to end: enumerate_configurations on seeded random catalogs and on the
  bundled 20-product catalog, forcing each kernel in turn.

Usage: python benchmarks/bench_matching.py [--repeat N]
"""

import argparse
import itertools
import random
import statistics
import sys
import time
from pathlib import Path

from robocim import QueryRequirements, load_catalog
from robocim._matching_py import enumerate_matchings as py_kernel

try:
    from robocim._matching_c import enumerate_matchings as c_kernel
except ImportError:
    c_kernel = None

import robocim.matching as matching_mod
import robocim.solver as solver_mod
from robocim.randgen import random_catalog

FIXTURE = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "fullsize20.json"


def synth_masks(rng, n, density):
    allowed = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < density:
            allowed[i] |= 1 << j
            allowed[j] |= 1 << i
    return allowed


def timeit(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def bench_kernel(repeat):
    print("raw kernel (perfect-matching enumeration)")
    print(f"{'ports':>6} {'density':>8} {'matchings':>10} {'python':>12} {'compiled':>12} {'speedup':>8}")
    rng = random.Random(1)
    for n, density in [(8, 0.6), (12, 0.5), (16, 0.45), (20, 0.4), (24, 0.35)]:
        allowed = synth_masks(rng, n, density)
        count = len(py_kernel(n, allowed))
        t_py, _ = timeit(lambda: py_kernel(n, allowed), repeat)
        if c_kernel is not None:
            t_c, _ = timeit(lambda: c_kernel(n, allowed), repeat)
            ratio = t_py / t_c if t_c else float("inf")
            print(f"{n:>6} {density:>8.2f} {count:>10} {t_py*1e3:>10.2f}ms {t_c*1e3:>10.2f}ms {ratio:>7.1f}x")
        else:
            print(f"{n:>6} {density:>8.2f} {count:>10} {t_py*1e3:>10.2f}ms {'n/a':>12} {'n/a':>8}")


def force_backend(kernel):
    # solver binds robocim.matching.enumerate_matchings at import; swap both spots
    matching_mod._default = kernel
    solver_mod.enumerate_matchings = matching_mod.enumerate_matchings


def bench_solver(repeat):
    print()
    print("end to end (enumerate_configurations)")
    rng = random.Random(2)
    catalogs = [("random-12p", random_catalog(rng, claim_count=4)) for _ in range(20)]
    workloads = [
        ("20 random catalogs, k=4+5", None),
        ("bundled 20-product catalog", None),
    ]
    bundled = load_catalog(FIXTURE)

    def run_random():
        for _, cat in catalogs:
            for k in (4, 5):
                solver_mod.enumerate_configurations(cat, QueryRequirements(application="any", size_k=k))

    def run_bundled():
        for app, k in (("any", 4), ("any", 5), ("pick-and-place", 4), ("screwdriving", 4)):
            solver_mod.enumerate_configurations(bundled, QueryRequirements(application=app, size_k=k))

    runners = {"20 random catalogs, k=4+5": run_random, "bundled 20-product catalog": run_bundled}
    print(f"{'workload':>28} {'python':>12} {'compiled':>12} {'speedup':>8}")
    for name, _ in workloads:
        fn = runners[name]
        force_backend(py_kernel)
        t_py, _ = timeit(fn, repeat)
        if c_kernel is not None:
            force_backend(c_kernel)
            t_c, _ = timeit(fn, repeat)
            print(f"{name:>28} {t_py*1e3:>10.1f}ms {t_c*1e3:>10.1f}ms {t_py/t_c:>7.2f}x")
        else:
            print(f"{name:>28} {t_py*1e3:>10.1f}ms {'n/a':>12} {'n/a':>8}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if c_kernel is None:
        print("note: compiled kernel not built; showing python timings only", file=sys.stderr)
    bench_kernel(args.repeat)
    bench_solver(args.repeat)


if __name__ == "__main__":
    main()
