"""Engine-versus-oracle comparison on single instances and on random batches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .dataset import MisProfile, TransactionDataset, format_mis, serialize_fimi
from .engine import Solution
from .oracle import DEFAULT_LIMIT, OracleLimit, oracle_filter, oracle_q0, oracle_q3
from .queries import QuerySpec, solve_query
from .synth import LCG, random_instance


def _canonical_tuple(itemsets):
    return tuple(sorted(itemsets, key=lambda p: (len(p), p)))


def engine_answer(solutions: list[Solution], spec: QuerySpec) -> list:
    """Engine output in the oracle's shape (sorted, duplicates kept)."""
    if spec.kind != "q3":
        return sorted(s.indices[0] for s in solutions)
    if spec.mode == "disjoint" and not spec.symmetry_breaking:
        return sorted(s.indices for s in solutions)
    return sorted(_canonical_tuple(s.indices) for s in solutions)


def oracle_answer(
    ds: TransactionDataset, profile: MisProfile, spec: QuerySpec, limit: OracleLimit = DEFAULT_LIMIT
) -> list:
    if spec.kind == "q3":
        ordered = spec.mode == "disjoint" and not spec.symmetry_breaking
        return sorted(
            oracle_q3(ds, profile, spec.k, spec.ub, spec.c, spec.mode, ordered=ordered, limit=limit)
        )
    found = oracle_q0(ds, profile, limit)
    if spec.kind == "q1":
        found = oracle_filter(found, profile, spec.ub)
    elif spec.kind == "q2":
        found = oracle_filter(found, profile, spec.ub, spec.c)
    return sorted(found)


@dataclass
class Mismatch:
    dataset: TransactionDataset
    profile: MisProfile
    spec: QuerySpec
    engine: list
    oracle: list

    def describe(self) -> str:
        eng, ora = set(self.engine), set(self.oracle)
        lines = [
            f"query: {self.spec}",
            "dataset:",
            serialize_fimi(self.dataset).rstrip("\n"),
            "mis:",
            format_mis(self.profile, self.dataset).rstrip("\n"),
            f"engine count {len(self.engine)}, oracle count {len(self.oracle)}",
            f"only in engine: {sorted(eng - ora)[:10]}",
            f"only in oracle: {sorted(ora - eng)[:10]}",
        ]
        return "\n".join(lines)


def check_instance(
    ds: TransactionDataset,
    profile: MisProfile,
    spec: QuerySpec,
    heuristic: str = "minmis",
) -> tuple[Optional[Mismatch], object]:
    """Returns the mismatch (or None) and the engine's search statistics."""
    solutions, stats = solve_query(ds, profile, spec, heuristic)
    got = engine_answer(solutions, spec)
    expected = oracle_answer(ds, profile, spec)
    if got != expected:
        return Mismatch(ds, profile, spec, got, expected), stats
    return None, stats


def random_trials(
    seed: int, trials: int, n: int, m: int, density: float
) -> Iterator[tuple[TransactionDataset, MisProfile]]:
    rng = LCG(seed)
    for _ in range(trials):
        yield random_instance(rng, n, m, density)
