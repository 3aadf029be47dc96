#!/usr/bin/env python3
"""Compare the compiled step kernel against the NumPy fallback.

Runs the same seeded layouts through every available backend, checks that
their trajectories agree, and prints per-size timings plus the speedup.

Usage:
    python3 benchmarks/compare_backends.py [--sizes 100,200,400] [--iterations 100]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from geolayout.engine.backend import available_backends
from geolayout.engine.params import LayoutParams
from geolayout.engine.simulation import Simulation
from geolayout.generators import DensityGraphSpec, gen_density_graph


def time_backend(graph, params, kernel, iterations, repetitions):
    """Best-of-N wall time for `iterations` steps, plus the final coords."""
    best = float("inf")
    final = None
    for _ in range(repetitions):
        sim = Simulation(graph, params)
        coords = sim.coords
        temperature = params.resolved_t0()
        k = params.resolved_k(len(sim.ids))
        started = time.perf_counter()
        for _ in range(iterations):
            kernel(coords, sim._edge_src, sim._edge_dst, sim._edge_w,
                   sim._anchor, sim._anchored, k, params.geo_weight,
                   temperature, params.weighted_attraction)
            temperature *= 1.0 - params.cooling_alpha
        best = min(best, time.perf_counter() - started)
        final = coords
    return best, final


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,200,400,800")
    parser.add_argument("--iterations", type=int, default=100)
    parser.add_argument("--repetitions", type=int, default=3)
    parser.add_argument("--p", type=float, default=0.1, help="edge probability")
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    if len(backends) < 2:
        print("note: compiled backend unavailable; timing the fallback only")

    sizes = [int(s) for s in args.sizes.split(",")]
    params = LayoutParams(seed=1)
    header = f"{'n':>6} " + "".join(f"{name + ' (s)':>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)

    for n in sizes:
        graph = gen_density_graph(DensityGraphSpec(n=n, family="type1", p=args.p, seed=1))
        row = f"{n:>6} "
        times, finals = {}, {}
        for name, kernel in backends.items():
            elapsed, final = time_backend(graph, params, kernel,
                                          args.iterations, args.repetitions)
            times[name], finals[name] = elapsed, final
            row += f"{elapsed:>14.4f}"
        if len(finals) == 2:
            # Strict agreement over a short horizon; over long runs tiny
            # rounding differences get amplified by the dynamics, so the
            # final-state drift is reported but not treated as an error.
            short = {name: time_backend(graph, params, kernel, 5, 1)[1]
                     for name, kernel in backends.items()}
            a, b = short.values()
            diff = float(np.max(np.abs(a - b)))
            if diff > 1e-9:
                print(f"MISMATCH at n={n}: max difference after 5 steps {diff:.3e}")
                return 1
            fa, fb = finals.values()
            drift = float(np.max(np.abs(fa - fb)))
            slow, fast = sorted(times.values(), reverse=True)
            row += f"{slow / fast:>9.1f}x   (drift after {args.iterations} iters: {drift:.1e})"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
