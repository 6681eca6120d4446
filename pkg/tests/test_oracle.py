from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from misminer.dataset import MisProfile
from misminer.oracle import (
    OracleLimit,
    OracleLimitExceeded,
    count_support,
    is_mis_frequent,
    oracle_filter,
    oracle_q0,
    oracle_q3,
    reified_mis_holds,
)
from misminer.synth import LCG, random_instance


def letters(idx, names):
    return tuple(sorted(idx[c] for c in names))


def test_q0_example(D, S, idx):
    found = oracle_q0(D, S)
    assert len(found) == 14
    every = {letters(idx, n) for n in ["A", "B", "C", "D", "AB", "AC", "AD", "BC", "BD", "CD",
                                       "ABC", "ABD", "ACD", "BCD", "ABCD"]}
    assert every - set(found) == {letters(idx, "ABC")}


def test_q0_canonical_order(D, S):
    found = oracle_q0(D, S)
    assert found == sorted(found, key=lambda p: (len(p), p))


def test_q0_threshold_one(D):
    found = oracle_q0(D, MisProfile.uniform(4, 1))
    assert len(found) == 15  # every subset of t3 = ABCD occurs


def test_q0_unsatisfiable(D):
    assert oracle_q0(D, MisProfile.uniform(4, D.m + 1)) == []


def test_q0_guard(D, S):
    with pytest.raises(OracleLimitExceeded):
        oracle_q0(D, S, OracleLimit(max_items=3))


class TestFilter:
    def test_ub(self, D, S, idx):
        kept = oracle_filter(oracle_q0(D, S), S, ub=1)
        assert sorted(kept) == sorted(letters(idx, n) for n in ["A", "B", "C", "D", "AB", "AC", "BC"])

    def test_ub_and_c(self, D, S, idx):
        kept = oracle_filter(oracle_q0(D, S), S, ub=1, c=2)
        assert sorted(kept) == sorted(letters(idx, n) for n in ["AB", "AC", "BC"])

    def test_identity_cases(self, D, S):
        base = oracle_q0(D, S)
        assert oracle_filter(base, S, ub=max(S.s) - min(S.s)) == base
        assert oracle_filter(base, S, c=1) == base


class TestQ3:
    def test_disjoint(self, D, S):
        assert oracle_q3(D, S, 2, 1, 2, "disjoint") == []

    def test_distinct(self, D, S):
        assert len(oracle_q3(D, S, 2, 1, 2, "distinct")) == 3

    def test_ordered(self, D, S):
        assert len(oracle_q3(D, S, 2, 1, 2, "distinct", ordered=True)) == 6

    def test_k1(self, D, S):
        base = oracle_filter(oracle_q0(D, S), S, 1, 2)
        assert oracle_q3(D, S, 1, 1, 2) == [(p,) for p in sorted(base, key=lambda p: (len(p), p))]

    def test_guard(self, D, S):
        with pytest.raises(OracleLimitExceeded):
            oracle_q3(D, S, 4, 1, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 12), st.floats(0.1, 0.9))
def test_reified_encoding_equivalent(seed, n, m, density):
    ds, prof = random_instance(LCG(seed), n, m, density)
    for x in product((0, 1), repeat=n):
        selected = [i for i, v in enumerate(x) if v]
        if selected:
            assert reified_mis_holds(ds, prof, x) == is_mis_frequent(ds, prof, selected)


def test_count_support_recounts(D):
    assert count_support(D, []) == 5
    assert count_support(D, [0, 1]) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10), st.integers(1, 25), st.floats(0.1, 0.9))
def test_transaction_oracle_agrees(seed, n, m, density):
    from misminer.oracle import oracle_q0_from_transactions

    ds, prof = random_instance(LCG(seed), n, m, density)
    assert oracle_q0_from_transactions(ds, prof) == oracle_q0(ds, prof)
