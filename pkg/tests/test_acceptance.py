"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Criterion 5 needs the Zoo FIMI file; point ``MISMINER_ZOO`` at it to enable.
"""

from __future__ import annotations

import math
import os
import sys
import time
from dataclasses import dataclass, field

import pytest

from misminer.bench import SQRT10, measure
from misminer.dataset import ROUNDINGS, MisProfile, assign_mis, parse_fimi, read_fimi
from misminer.engine import Model, SearchState, SearchStats, propagate_fixpoint, replay, search, solve
from misminer.oracle import oracle_filter, oracle_q0, oracle_q0_from_transactions
from misminer.propagators import FreqRare
from misminer.queries import QuerySpec, build_model
from misminer.synth import LCG, random_instance
from misminer.verify import check_instance

EXAMPLE = "1 2 4\n1 3 4\n1 2 3 4\n2 3\n1 2 3\n"  # A=1 B=2 C=3 D=4
EXAMPLE_S = {1: 4, 2: 3, 3: 3, 4: 1}

RESULTS: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def example():
    ds = parse_fimi(EXAMPLE)
    return ds, MisProfile(tuple(EXAMPLE_S[label] for label in ds.labels))


def q0(ds, profile, heuristic="minmis"):
    return Model(ds, profile, 1, [FreqRare(ds, profile)], heuristic)


# criterion 2 instances ---------------------------------------------------

Q3_CANDIDATE_CAP = 40
SEED = 20240601


@dataclass
class Instance:
    ds: object
    profile: MisProfile
    specs: list = field(default_factory=list)


def _spread(profile):
    return max(profile.s) - min(profile.s)


def single_block_instances(count=200, seed=SEED):
    rng = LCG(seed)
    for _ in range(count):
        n, m = rng.randint(1, 12), rng.randint(1, 40)
        ds, profile = random_instance(rng, n, m, rng.uniform(0.1, 0.9))
        ub = rng.randint(0, _spread(profile))
        specs = [
            QuerySpec("q0"),
            QuerySpec("q1", ub=rng.randint(0, _spread(profile))),
            QuerySpec("q2", ub=ub, c=rng.randint(0, math.ceil(n / 2))),
        ]
        yield Instance(ds, profile, specs)


def q3_instances(count=50, seed=SEED + 1):
    """Random Q3 instances whose Q2 candidate list stays small enough for the oracle."""
    rng = LCG(seed)
    made = 0
    while made < count:
        n, m = rng.randint(1, 8), rng.randint(1, 40)
        ds, profile = random_instance(rng, n, m, rng.uniform(0.1, 0.9))
        ub, c, k = rng.randint(0, _spread(profile)), rng.randint(0, math.ceil(n / 2)), rng.randint(2, 3)
        candidates = oracle_filter(oracle_q0(ds, profile), profile, ub, c)
        if len(candidates) > Q3_CANDIDATE_CAP:
            continue
        made += 1
        yield Instance(ds, profile, [QuerySpec("q3", ub=ub, c=c, k=k, mode=mode)
                                     for mode in ("disjoint", "distinct")])


# -------------------------------------------------------------------------


def test_criterion_1_example_semantics():
    ds, profile = example()
    runs = []
    for _ in range(3):
        start = time.perf_counter()
        sols, _ = solve(q0(ds, profile))
        runs.append(time.perf_counter() - start)
    found = {s.itemset for s in sols}
    wanted = [(1, 2), (4,), (1, 2, 3, 4), (2, 3, 4)]
    ok = all(p in found for p in wanted) and (1, 2, 3) not in found
    ms = min(runs) * 1000
    report(1, ok and ms < 10, f"AB, D, ABCD, BCD present, ABC absent: {ok}; {ms:.2f} ms < 10 ms")


def test_criterion_2_oracle_equivalence_and_3_backtrack_free():
    start = time.perf_counter()
    mismatches, checked, q0_runs, q0_fail_runs = [], 0, 0, []
    for inst in list(single_block_instances()) + list(q3_instances()):
        for spec in inst.specs:
            mismatch, stats = check_instance(inst.ds, inst.profile, spec)
            checked += 1
            if mismatch is not None:
                mismatches.append(mismatch)
            if spec.kind == "q0" and min(inst.profile.s) <= inst.ds.m:
                q0_runs += 1
                if stats.fails:
                    q0_fail_runs.append(stats.fails)
    elapsed = time.perf_counter() - start
    if mismatches:
        print(mismatches[0].describe())

    ds, profile = example()
    _, lex_stats = solve(q0(ds, profile, "lex"))
    backtrack_free = not q0_fail_runs and lex_stats.fails >= 1

    try:
        report(2, not mismatches and elapsed < 60,
               f"{len(mismatches)} mismatches over {checked} query runs; {elapsed:.1f} s < 60 s")
    finally:
        report(3, backtrack_free,
               f"minMis fails>0 on {len(q0_fail_runs)} of {q0_runs} q0 runs; "
               f"example lex fails = {lex_stats.fails}")


def test_criterion_4_derived_counts():
    ds, profile = example()
    specs = [
        (QuerySpec("q0"), 14),
        (QuerySpec("q1", ub=1), 7),
        (QuerySpec("q2", ub=1, c=2), 3),
        (QuerySpec("q3", ub=1, c=2, k=2, mode="disjoint"), 0),
        (QuerySpec("q3", ub=1, c=2, k=2, mode="distinct"), 3),
    ]
    counts, oracle_ok = [], True
    for spec, expected in specs:
        mismatch, stats = check_instance(ds, profile, spec)
        oracle_ok &= mismatch is None
        counts.append(stats.solutions)
    expected = [e for _, e in specs]
    report(4, counts == expected and oracle_ok,
           f"counts {counts}, expected {expected}, oracle agrees: {oracle_ok}")


ZOO = os.environ.get("MISMINER_ZOO")
ZOO_COUNT = 1_314_983


@pytest.mark.slow
def test_criterion_5_zoo():
    if not ZOO:
        RESULTS.append("criterion 5: SKIP (optional; set MISMINER_ZOO to the Zoo FIMI file)")
        pytest.skip("set MISMINER_ZOO to the Zoo FIMI file")
    ds = read_fimi(ZOO)
    per_rounding = {}
    for rounding in ROUNDINGS:
        profile = assign_mis(ds, "0.1", "0.01", relative=True, rounding=rounding)
        stats = SearchStats()
        for _ in search(q0(ds, profile), stats):
            pass
        per_rounding[rounding] = stats
    summary = ", ".join(f"{r}: sol={s.solutions} fails={s.fails} {s.elapsed:.1f}s"
                        for r, s in per_rounding.items())
    hit = [s for s in per_rounding.values() if s.solutions == ZOO_COUNT]
    if hit:
        ok = any(s.elapsed < 60 and s.fails == 0 for s in hit)
        report(5, ok, f"count reproduced; {summary}")
        return
    prefix = parse_fimi("\n".join(
        " ".join(str(ds.labels[i]) for i in sorted(t)) for t in ds.transactions[:40]))
    agree = True
    for rounding in ROUNDINGS:
        profile = assign_mis(prefix, "0.1", "0.01", relative=True, rounding=rounding)
        got = sorted(s.indices[0] for s in solve(q0(prefix, profile))[0])
        agree &= got == sorted(oracle_q0_from_transactions(prefix, profile))
    report(5, agree, f"no convention gives {ZOO_COUNT}; {summary}; "
                     f"40-transaction prefix matches oracle: {agree}")


def test_criterion_6_complexity():
    small = measure(20, 40000)
    large = measure(round(20 * SQRT10), round(40000 * SQRT10))
    size_ratio = large.size / small.size
    factor = large.per_node / small.per_node
    report(6, 5 <= factor <= 30,
           f"n*m x{size_ratio:.2f} gives per-node cost x{factor:.2f}, window [5, 30]")


def _trail_run(seed, steps=40):
    rng = LCG(seed)
    n, m = rng.randint(1, 10), rng.randint(1, 30)
    ds, profile = random_instance(rng, n, m, rng.uniform(0.1, 0.9))
    k = rng.randint(1, 3)
    ub, c = rng.randint(0, m), rng.randint(0, 2)
    spec = QuerySpec("q3", ub=ub, c=c, k=k) if k > 1 else QuerySpec("q2", ub=ub, c=c)
    model = build_model(ds, profile, spec)
    state = SearchState(ds, model.blocks)
    propagate_fixpoint(model, state)
    decisions = []
    for _ in range(steps):
        free = [v for v in range(n * model.blocks) if state.value(v) is None]
        if free and rng.random() < 0.6:
            var = free[rng.randint(0, len(free) - 1)]
            value = rng.randint(0, 1)
            state.push()
            state.fix(var, value)
            propagate_fixpoint(model, state)
            decisions.append((var, value))
        elif decisions:
            for _ in range(rng.randint(1, len(decisions))):
                state.pop()
                decisions.pop()
        if state.snapshot() != replay(model, decisions).snapshot():
            return False
    return True


def test_criterion_7_trail_soundness():
    bad = [seed for seed in range(1000) if not _trail_run(seed)]
    report(7, not bad, f"{1000 - len(bad)}/1000 decision/undo sequences match a fresh replay")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
