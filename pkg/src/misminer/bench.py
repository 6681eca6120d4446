"""Per-node propagation cost of Q0 on synthetic data of growing size."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from itertools import takewhile
from time import perf_counter
from typing import Iterable

import numpy as np

from .dataset import TransactionDataset, assign_mis
from .engine import SearchStats, search
from .queries import QuerySpec, build_model


@dataclass
class BenchPoint:
    n: int
    m: int
    calls: int
    per_node: float  # seconds per propagation fixpoint call

    @property
    def size(self) -> int:
        return self.n * self.m


class _Timed:
    def __init__(self, inner):
        self.inner = inner
        self.scope = inner.scope
        self.elapsed = 0.0
        self.calls = 0

    def propagate(self, state):
        t = perf_counter()
        result = self.inner.propagate(state)
        self.elapsed += perf_counter() - t
        self.calls += 1
        return result


def synthetic_dataset(n: int, m: int, density: float = 0.5, seed: int = 0) -> TransactionDataset:
    """Uniform random ``m x n`` occurrence matrix with item labels ``1..n``."""
    matrix = np.random.default_rng(seed).random((m, n)) < density
    covers = tuple(
        int.from_bytes(np.packbits(col, bitorder="little").tobytes(), "little")
        for col in matrix.T
    )
    transactions = tuple(frozenset(np.flatnonzero(row).tolist()) for row in matrix)
    return TransactionDataset(tuple(range(1, n + 1)), transactions, covers)


def measure(
    n: int,
    m: int,
    *,
    max_nodes: int = 2000,
    repeats: int = 3,
    density: float = 0.5,
    seed: int = 0,
) -> BenchPoint:
    """Mean time per propagation call over the first ``max_nodes`` nodes of a Q0 search.

    Supports come from ``assign_mis(beta=1/8, mis_min=5%)`` so the search
    tree is deep enough to reach ``max_nodes`` on all but tiny datasets. The
    median of ``repeats`` runs is reported.
    """
    ds = synthetic_dataset(n, m, density, seed)
    profile = assign_mis(ds, "1/8", "1/20", relative=True)
    samples = []
    calls = 0
    for _ in range(repeats):
        model = build_model(ds, profile, QuerySpec("q0"))
        timed = [_Timed(p) for p in model.propagators]
        model.propagators = timed
        stats = SearchStats()
        for _ in takewhile(lambda _s: stats.nodes < max_nodes, search(model, stats)):
            pass
        calls = max(t.calls for t in timed)
        samples.append(sum(t.elapsed for t in timed) / calls)
    return BenchPoint(n, m, calls, statistics.median(samples))


def scale_sweep(
    n0: int, m0: int, factors: Iterable[float], **kwargs
) -> list[BenchPoint]:
    """One point per factor, scaling both ``n`` and ``m`` by it."""
    return [
        measure(max(1, round(n0 * f)), max(1, round(m0 * f)), **kwargs) for f in factors
    ]


def render(points: list[BenchPoint]) -> str:
    base = points[0]
    lines = [f"{'n':>6} {'m':>8} {'n*m':>10} {'calls':>6} {'us/node':>9} {'x cost':>7} {'x n*m':>7}"]
    for p in points:
        lines.append(
            f"{p.n:>6} {p.m:>8} {p.size:>10} {p.calls:>6} {p.per_node * 1e6:>9.2f} "
            f"{p.per_node / base.per_node:>7.2f} {p.size / base.size:>7.2f}"
        )
    return "\n".join(lines)


SQRT10 = math.sqrt(10)
