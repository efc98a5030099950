#!/usr/bin/env python3
"""Benchmark the compiled detection kernels against the pure-Python fallback.

Runs Louvain and label propagation on planted-partition graphs of growing
size with each backend and prints a timing table. Both backends produce
identical partitions (asserted), so the only difference is speed.

Usage: python benchmarks/bench_backends.py [--sizes 1000,5000,20000] [--repeat 3]
"""

import argparse
import statistics
import sys
import time

import decept.detection.backend as backend_mod
from decept.detection.backend import get_kernels
from decept.detection.labelprop import detect_label_propagation
from decept.detection.louvain import detect_louvain
from decept.graphio import PlantedPartitionParams, generate_planted_partition


def bench(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1000,5000,20000")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = []
    for name in ("compiled", "python"):
        try:
            backends.append((name, get_kernels(name)))
        except ImportError:
            print(f"note: {name} kernels unavailable, skipping", file=sys.stderr)
    if len(backends) < 2:
        print("only one backend available; timings below have no baseline",
              file=sys.stderr)

    print(f"{'graph':>22}  {'algorithm':>12}  {'backend':>9}  {'best':>8}  {'median':>8}")
    original = (backend_mod.LouvainSweeper, backend_mod.LabelSweeper)
    try:
        for n in [int(s) for s in args.sizes.split(",")]:
            k = max(4, n // 500)
            params = PlantedPartitionParams(
                n=n, k=k, p_in=min(1.0, 20.0 * k / n), p_out=4.0 / n, seed=args.seed,
            )
            graph, _ = generate_planted_partition(params)
            label = f"n={n} m={graph.m}"
            for algo_name, algo in (
                ("louvain", lambda: detect_louvain(graph, seed=args.seed)),
                ("labelprop", lambda: detect_label_propagation(graph, seed=args.seed)),
            ):
                outputs = []
                for backend_name, (louv, lab, _) in backends:
                    backend_mod.LouvainSweeper = louv
                    backend_mod.LabelSweeper = lab
                    best, median, result = bench(algo, args.repeat)
                    outputs.append(result)
                    print(f"{label:>22}  {algo_name:>12}  {backend_name:>9}"
                          f"  {best:7.3f}s  {median:7.3f}s")
                if len(outputs) == 2 and outputs[0] != outputs[1]:
                    print("ERROR: backends disagree", file=sys.stderr)
                    return 1
    finally:
        backend_mod.LouvainSweeper, backend_mod.LabelSweeper = original
    return 0


if __name__ == "__main__":
    sys.exit(main())
