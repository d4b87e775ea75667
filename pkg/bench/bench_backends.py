#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against the pure-Python fallback.

Usage: python bench/bench_backends.py [--repeat N]

Both backends run the identical kernel source (results are bit-identical);
this script measures the speed gap on representative assignment instances.
"""

import argparse
import time

import numpy as np

from sagsim.backend import load_kernels
from sagsim.matching import VisibilityGraph, build_visibility_graph
from sagsim.scenario import ScenarioConfig


def synthetic_graph(rng, num_sats, num_haps, edge_p):
    edges = [(s, h, int(rng.integers(1, (1 << 20) + 1)) / (1 << 20))
             for h in range(num_haps) for s in range(num_sats)
             if rng.random() < edge_p]
    return VisibilityGraph.from_edges(num_sats, num_haps, edges)


def cases():
    rng = np.random.default_rng(7)
    scenario = ScenarioConfig(placement_seed=3)
    yield "scenario 6x50 cap 3", build_visibility_graph(scenario, 1800.0), 3
    yield "synthetic 4x12 cap 2", synthetic_graph(rng, 4, 12, 0.6), 2
    yield "synthetic 8x60 cap 4", synthetic_graph(rng, 8, 60, 0.4), 4
    yield "synthetic 10x100 cap 5", synthetic_graph(rng, 10, 100, 0.35), 5


def time_solver(solver, graph, cap, unit, repeat):
    args = (graph.num_haps, graph.num_sats, graph.hap_ptr,
            graph.edge_sat, graph.edge_weight, cap)
    if unit is not None:
        args = args + (unit,)
    solver(*args)  # warm-up (and JIT compile on the numba path)
    t0 = time.perf_counter()
    for _ in range(repeat):
        solver(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=50,
                        help="timed solves per case (default %(default)s)")
    opts = parser.parse_args()

    backends = {name: load_kernels(name) for name in ("numpy", "numba")}
    kernels = ("solve_optimal", "solve_greedy", "solve_random")

    print(f"{'case':26s} {'kernel':14s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    rng = np.random.default_rng(0)
    for label, graph, cap in cases():
        unit_draws = rng.random(graph.num_haps)
        for kernel in kernels:
            unit = unit_draws if kernel == "solve_random" else None
            per = {
                name: time_solver(getattr(ks, kernel), graph, cap, unit, opts.repeat)
                for name, ks in backends.items()
            }
            print(f"{label:26s} {kernel:14s} "
                  f"{per['numpy'] * 1e6:10.1f}us {per['numba'] * 1e6:10.1f}us "
                  f"{per['numpy'] / per['numba']:8.1f}x")


if __name__ == "__main__":
    main()
