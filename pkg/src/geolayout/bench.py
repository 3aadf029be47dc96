"""Timing harness: layout wall time versus graph size across density families.

Each cell generates a density graph, runs the full simulation, and records
the median wall time over several repetitions. Timing covers graph
construction plus simulation only (engine-only; no serialization or
rendering). A per-row hash of the generated graph makes reruns verifiable
even though times vary.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import time
from dataclasses import dataclass

from .engine.params import LayoutParams
from .engine.simulation import Simulation
from .errors import InvalidInputError
from .formats import save_graph
from .generators import DensityGraphSpec, gen_density_graph


@dataclass(frozen=True)
class BenchRun:
    """One benchmark cell; ``error`` is set instead of times when the cell failed."""

    spec: DensityGraphSpec
    params: LayoutParams
    repetitions: int
    samples_seconds: tuple[float, ...]
    graph_hash: str
    error: str | None = None

    @property
    def median_seconds(self) -> float:
        ordered = sorted(self.samples_seconds)
        mid = len(ordered) // 2
        if len(ordered) % 2:
            return ordered[mid]
        return (ordered[mid - 1] + ordered[mid]) / 2.0


def graph_fingerprint(graph) -> str:
    return hashlib.sha256(save_graph(graph)).hexdigest()[:16]


def run_cell(spec: DensityGraphSpec, params: LayoutParams, repetitions: int) -> BenchRun:
    try:
        samples = []
        fingerprint = ""
        for _ in range(repetitions):
            start = time.perf_counter()
            graph = gen_density_graph(spec)
            sim = Simulation(graph, params)
            sim.run(params.n_iterations)
            samples.append(time.perf_counter() - start)
            if not fingerprint:
                fingerprint = graph_fingerprint(graph)
        return BenchRun(spec, params, repetitions, tuple(samples), fingerprint)
    except MemoryError as exc:
        return BenchRun(spec, params, repetitions, (), "", error=f"resource exhaustion: {exc}")


def run_benchmark(sizes, families, params: LayoutParams, repetitions: int = 3):
    """Run the full (size x family) grid sequentially.

    ``families`` are DensityGraphSpec templates whose ``n`` is replaced by
    each size. Failed cells become rows with an error note, not an abort.
    """
    if repetitions < 1:
        raise InvalidInputError("repetitions must be >= 1")
    runs = []
    for template in families:
        for n in sizes:
            spec = DensityGraphSpec(n=n, family=template.family,
                                    p=template.p, c=template.c, seed=template.seed)
            runs.append(run_cell(spec, params, repetitions))
    return runs


CSV_COLUMNS = [
    "family", "n", "p_or_c", "seed", "repetitions", "median_seconds",
    "all_samples_seconds", "graph_hash", "k", "K", "T0", "alpha", "n_iterations",
]


def to_csv(runs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for run in runs:
        spec, params = run.spec, run.params
        writer.writerow([
            spec.family,
            spec.n,
            spec.p if spec.p is not None else spec.c,
            spec.seed,
            run.repetitions,
            "" if run.error else f"{run.median_seconds:.6f}",
            run.error or ";".join(f"{s:.6f}" for s in run.samples_seconds),
            run.graph_hash,
            params.resolved_k(spec.n),
            params.geo_weight,
            params.resolved_t0(),
            params.cooling_alpha,
            params.n_iterations,
        ])
    return buf.getvalue()


def fit_scaling_exponent(sizes, times) -> float:
    """Least-squares slope of log(time) against log(n)."""
    pairs = [(n, t) for n, t in zip(sizes, times) if t > 0]
    if len(pairs) < 3:
        raise InvalidInputError("need at least 3 (size, time) points per family")
    xs = [math.log(n) for n, _ in pairs]
    ys = [math.log(t) for _, t in pairs]
    x_mean = sum(xs) / len(xs)
    y_mean = sum(ys) / len(ys)
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    return sxy / sxx
