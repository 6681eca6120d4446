"""Brute-force reference enumerators.

Nothing here uses the bit-vector covers: every frequency is recounted from the
horizontal transactions, so a defect in the cover code cannot show up on both
sides of an equivalence check.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .dataset import MisProfile, TransactionDataset

Itemset = tuple[int, ...]


class OracleLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleLimit:
    max_items: int = 25
    q3_max_items: int = 10
    q3_max_k: int = 3


DEFAULT_LIMIT = OracleLimit()


def count_support(ds: TransactionDataset, itemset: Iterable[int]) -> int:
    items = frozenset(itemset)
    return sum(1 for t in ds.transactions if items <= t)


def is_mis_frequent(ds: TransactionDataset, profile: MisProfile, itemset: Sequence[int]) -> bool:
    """freq(P) >= min over P of s_i, for a nonempty P."""
    return count_support(ds, itemset) >= min(profile.s[i] for i in itemset)


def reified_mis_holds(ds: TransactionDataset, profile: MisProfile, x: Sequence[int]) -> bool:
    """Evaluate the reified Boolean encoding on a complete 0/1 assignment ``x``.

    The transaction variables are derived through the channeling constraints
    (``y_j = 1`` iff every selected item occurs in ``t_j``); then every
    selected item must be supported by at least the smallest MIS among the
    selected items.
    """
    selected = [i for i, v in enumerate(x) if v]
    y = [all(i in t for i in selected) for t in ds.transactions]
    if not selected:
        return True
    threshold = min(profile.s[i] for i in selected)
    for i in selected:
        support = sum(1 for j, t in enumerate(ds.transactions) if y[j] and i in t)
        if support < threshold:
            return False
    return True


def _canonical(itemsets: Iterable[Itemset]) -> list[Itemset]:
    return sorted(itemsets, key=lambda p: (len(p), p))


def oracle_q0(
    ds: TransactionDataset, profile: MisProfile, limit: OracleLimit = DEFAULT_LIMIT
) -> list[Itemset]:
    """All nonempty MIS-frequent itemsets as dense index tuples, ordered by size then lex."""
    if ds.n > limit.max_items:
        raise OracleLimitExceeded(f"{ds.n} items exceeds the oracle limit of {limit.max_items}")
    found = []
    for size in range(1, ds.n + 1):
        for itemset in combinations(range(ds.n), size):
            if is_mis_frequent(ds, profile, itemset):
                found.append(itemset)
    return found


def oracle_filter(
    itemsets: Iterable[Itemset],
    profile: MisProfile,
    ub: Optional[int] = None,
    c: Optional[int] = None,
) -> list[Itemset]:
    kept = []
    for p in itemsets:
        if c is not None and len(p) < c:
            continue
        if ub is not None and any(abs(profile.s[a] - profile.s[b]) > ub for a, b in combinations(p, 2)):
            continue
        kept.append(p)
    return kept


def oracle_q3(
    ds: TransactionDataset,
    profile: MisProfile,
    k: int,
    ub: Optional[int],
    c: Optional[int],
    mode: str = "disjoint",
    *,
    ordered: bool = False,
    limit: OracleLimit = DEFAULT_LIMIT,
) -> list[tuple[Itemset, ...]]:
    """k-combinations of q2 itemsets that are pairwise disjoint or pairwise distinct.

    Combinations come out as tuples of itemsets in canonical order; with
    ``ordered`` every permutation of each combination is listed instead.
    """
    if ds.n > limit.q3_max_items or k > limit.q3_max_k:
        raise OracleLimitExceeded(
            f"q3 oracle is limited to {limit.q3_max_items} items and k <= {limit.q3_max_k}"
        )
    if mode not in ("disjoint", "distinct"):
        raise ValueError(f"unknown mode {mode!r}")
    candidates = _canonical(oracle_filter(oracle_q0(ds, profile, limit), profile, ub, c))
    sets = [frozenset(p) for p in candidates]

    def compatible(a: int, b: int) -> bool:
        if mode == "disjoint":
            return not sets[a] & sets[b]
        return sets[a] != sets[b]

    combos = []
    for idx in combinations(range(len(candidates)), k):
        if all(compatible(a, b) for a, b in combinations(idx, 2)):
            combos.append(tuple(candidates[i] for i in idx))
    if ordered:
        return [perm for combo in combos for perm in permutations(combo)]
    return combos


def oracle_q0_from_transactions(
    ds: TransactionDataset, profile: MisProfile, max_width: int = 20
) -> list[Itemset]:
    """Same answer as :func:`oracle_q0`, enumerated through transaction subsets.

    Every support is at least 1, so a frequent itemset is a subset of some
    transaction. This scales with transaction width instead of ``n``.
    """
    seen: set[Itemset] = set()
    for t in set(ds.transactions):
        if len(t) > max_width:
            raise OracleLimitExceeded(f"transaction of width {len(t)} exceeds {max_width}")
        items = sorted(t)
        for size in range(1, len(items) + 1):
            seen.update(combinations(items, size))
    return _canonical(p for p in seen if is_mis_frequent(ds, profile, p))
