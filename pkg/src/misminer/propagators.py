"""Propagators for the MIS frequency constraint and the user constraints.

Each propagator only touches domains through ``SearchState.fix`` so that all
pruning is trailed, and each one runs to its own fixpoint within a call.
"""

from __future__ import annotations

from .dataset import MisProfile, TransactionDataset
from .engine import UNFIXED, PropagationResult, SearchState

FAILURE = PropagationResult.FAILURE
CHANGED = PropagationResult.CHANGED
STABLE = PropagationResult.STABLE


class FreqRare:
    """Frequency under multiple minimum item supports for one variable block.

    The threshold is the smallest support among items still allowed in the
    itemset (fixed to 1 or unfixed). The block fails when its current cover is
    below it; an unfixed item is excluded when adding it would drop the cover
    below it.
    """

    def __init__(self, dataset: TransactionDataset, profile: MisProfile, block: int = 0):
        self.dataset = dataset
        self.profile = profile
        self.block = block
        self.scope = (block,)
        s = profile.s
        self._by_support = sorted(range(dataset.n), key=lambda i: (s[i], i))

    def __repr__(self):
        return f"FreqRare(block={self.block})"

    def threshold(self, state: SearchState):
        """min s_i over P and U of the block, or None if every item is fixed to 0."""
        dom, off, s = state.domains, self.block * state.n, self.profile.s
        for i in self._by_support:
            if dom[off + i]:
                return s[i]
        return None

    def propagate(self, state: SearchState) -> PropagationResult:
        thr = self.threshold(state)
        if thr is None:
            return STABLE
        n, off = state.n, self.block * state.n
        dom, item_covers = state.domains, self.dataset.covers
        changed = False
        while True:
            cov = state.covers[self.block]
            if cov.bit_count() < thr:
                return FAILURE
            pruned = False
            for i in range(n):
                if dom[off + i] == UNFIXED and (cov & item_covers[i]).bit_count() < thr:
                    state.fix(off + i, 0)
                    pruned = True
            if not pruned:
                break
            changed = True
            # excluding the cheapest remaining item can raise the threshold
            new = self.threshold(state)
            if new is None or new == thr:
                break
            thr = new
        return CHANGED if changed else STABLE


class DistanceMIS:
    """Pairwise support gap ``|s_i - s_j| <= ub`` between items of one block."""

    def __init__(self, profile: MisProfile, ub: int, block: int = 0):
        if ub < 0:
            raise ValueError("ub must be >= 0")
        self.profile = profile
        self.ub = ub
        self.block = block
        self.scope = (block,)

    def __repr__(self):
        return f"DistanceMIS(ub={self.ub}, block={self.block})"

    def propagate(self, state: SearchState) -> PropagationResult:
        n, off, dom, s = state.n, self.block * state.n, state.domains, self.profile.s
        fixed = [s[i] for i in range(n) if dom[off + i] == 1]
        if not fixed:
            return STABLE
        lo, hi = min(fixed), max(fixed)
        if hi - lo > self.ub:
            return FAILURE
        # a candidate must stay within ub of both extremes of P
        low_ok, high_ok = hi - self.ub, lo + self.ub
        changed = STABLE
        for i in range(n):
            if dom[off + i] == UNFIXED and not low_ok <= s[i] <= high_ok:
                state.fix(off + i, 0)
                changed = CHANGED
        return changed


class MinCardinality:
    """At least ``c`` items fixed to 1 in one block."""

    def __init__(self, c: int, block: int = 0):
        if c < 0:
            raise ValueError("c must be >= 0")
        self.c = c
        self.block = block
        self.scope = (block,)

    def __repr__(self):
        return f"MinCardinality(c={self.c}, block={self.block})"

    def propagate(self, state: SearchState) -> PropagationResult:
        if self.c == 0:
            return STABLE
        n, off = state.n, self.block * state.n
        block = state.domains[off:off + n]
        ones, free = block.count(1), block.count(UNFIXED)
        if ones + free < self.c:
            return FAILURE
        if ones + free == self.c and free:
            for i in range(n):
                if block[i] == UNFIXED:
                    state.fix(off + i, 1)
            return CHANGED
        return STABLE


class Disjoint:
    """No item belongs to both blocks ``p`` and ``q``."""

    def __init__(self, p: int, q: int):
        if p == q:
            raise ValueError("disjointness needs two different blocks")
        self.p, self.q = p, q
        self.scope = (p, q)

    def __repr__(self):
        return f"Disjoint({self.p}, {self.q})"

    def propagate(self, state: SearchState) -> PropagationResult:
        n, dom = state.n, state.domains
        op, oq = self.p * n, self.q * n
        result = STABLE
        for i in range(n):
            a, b = dom[op + i], dom[oq + i]
            if a == 1:
                if b == 1:
                    return FAILURE
                if b == UNFIXED:
                    state.fix(oq + i, 0)
                    result = CHANGED
            elif b == 1 and a == UNFIXED:
                state.fix(op + i, 0)
                result = CHANGED
        return result


class LexLess:
    """Block ``p`` is lexicographically below block ``q`` as 0/1 vectors over item index.

    Prunes along the longest fixed-and-equal prefix: at the first position
    that is not fixed and equal, a 1 in ``p`` forces a 1 in ``q`` and a 0 in
    ``q`` forces a 0 in ``p``; anything else leaves the constraint open.
    """

    def __init__(self, p: int, q: int, strict: bool = True):
        if p == q:
            raise ValueError("lex ordering needs two different blocks")
        self.p, self.q, self.strict = p, q, strict
        self.scope = (p, q)

    def __repr__(self):
        return f"LexLess({self.p}, {self.q}, strict={self.strict})"

    def propagate(self, state: SearchState) -> PropagationResult:
        n, dom = state.n, state.domains
        op, oq = self.p * n, self.q * n
        result = STABLE
        for i in range(n):
            a, b = dom[op + i], dom[oq + i]
            if a == UNFIXED or b == UNFIXED:
                if a == 1:
                    state.fix(oq + i, 1)
                elif b == 0:
                    state.fix(op + i, 0)
                else:
                    return result
                result = CHANGED
                continue
            if a != b:
                return result if a < b else FAILURE
        # the vectors are equal
        return FAILURE if self.strict else result


def freq_rare_propagate(state, dataset, profile, block=0) -> PropagationResult:
    return FreqRare(dataset, profile, block).propagate(state)


def distance_mis_propagate(state, profile, ub, block=0) -> PropagationResult:
    return DistanceMIS(profile, ub, block).propagate(state)


def min_cardinality_propagate(state, c, block=0) -> PropagationResult:
    return MinCardinality(c, block).propagate(state)


def disjoint_propagate(state, p, q) -> PropagationResult:
    return Disjoint(p, q).propagate(state)


def lex_less_propagate(state, p, q, strict=True) -> PropagationResult:
    return LexLess(p, q, strict).propagate(state)
