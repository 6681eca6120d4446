"""Trail-based depth-first search over Boolean item variables.

Variables are laid out block-major: variable ``v`` is item ``v % n`` of
block ``v // n``. A domain is one of ``0``, ``1`` or :data:`UNFIXED`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from time import perf_counter
from typing import Iterator, Optional, Protocol, Sequence

from .dataset import MisProfile, TransactionDataset

UNFIXED = 2

HEURISTICS = ("minmis", "lex")


class PropagationResult(enum.Enum):
    FAILURE = "failure"
    CHANGED = "changed"
    STABLE = "stable"


class Propagator(Protocol):
    scope: tuple[int, ...]

    def propagate(self, state: SearchState) -> PropagationResult: ...


class SearchState:
    """Domains of ``blocks * n`` Boolean variables plus one incremental cover per block.

    Every domain change goes through :meth:`fix` and is recorded on the trail,
    so :meth:`pop` restores domains and covers exactly as they were at the
    matching :meth:`push`.
    """

    def __init__(self, dataset: TransactionDataset, blocks: int = 1):
        if blocks < 1:
            raise ValueError("need at least one block")
        self.dataset = dataset
        self.n = dataset.n
        self.blocks = blocks
        self.domains = bytearray([UNFIXED]) * (self.n * blocks)
        self.covers = [dataset.full] * blocks
        self._trail: list[tuple[int, Optional[int]]] = []
        self._marks: list[int] = []

    @property
    def level(self) -> int:
        return len(self._marks)

    def value(self, var: int) -> Optional[int]:
        d = self.domains[var]
        return None if d == UNFIXED else d

    def fix(self, var: int, value: int) -> None:
        if self.domains[var] != UNFIXED:
            raise ValueError(f"variable {var} is already fixed")
        b, i = divmod(var, self.n)
        if value:
            self._trail.append((var, self.covers[b]))
            self.covers[b] &= self.dataset.covers[i]
        else:
            self._trail.append((var, None))
        self.domains[var] = 1 if value else 0

    def push(self) -> None:
        self._marks.append(len(self._trail))

    def pop(self) -> None:
        mark = self._marks.pop()
        trail, domains = self._trail, self.domains
        while len(trail) > mark:
            var, saved = trail.pop()
            domains[var] = UNFIXED
            if saved is not None:
                self.covers[var // self.n] = saved

    def _items(self, block: int, code: int) -> list[int]:
        off = block * self.n
        dom = self.domains
        return [i for i in range(self.n) if dom[off + i] == code]

    def P(self, block: int = 0) -> list[int]:
        return self._items(block, 1)

    def N(self, block: int = 0) -> list[int]:
        return self._items(block, 0)

    def U(self, block: int = 0) -> list[int]:
        return self._items(block, UNFIXED)

    def all_fixed(self) -> bool:
        return UNFIXED not in self.domains

    def snapshot(self) -> tuple[bytes, tuple[int, ...]]:
        return bytes(self.domains), tuple(self.covers)


@dataclass
class SearchStats:
    solutions: int = 0
    nodes: int = 0
    fails: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class Solution:
    """One itemset per block, as sorted external labels and sorted dense indices."""

    itemsets: tuple[tuple[int, ...], ...]
    indices: tuple[tuple[int, ...], ...]

    @property
    def itemset(self) -> tuple[int, ...]:
        return self.itemsets[0]


@dataclass
class Model:
    dataset: TransactionDataset
    profile: MisProfile
    blocks: int = 1
    propagators: list = field(default_factory=list)
    heuristic: str = "minmis"
    emit_empty: bool = False

    def __post_init__(self):
        if len(self.profile) != self.dataset.n:
            raise ValueError("MIS profile length differs from the item count")
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}")
        if self.blocks < 1:
            raise ValueError("need at least one block")
        for p in self.propagators:
            if any(not 0 <= b < self.blocks for b in p.scope):
                raise ValueError(f"{p!r} refers to a block outside the model")

    def variable_order(self) -> list[int]:
        """Static branching order: by support (minmis) or by external label (lex)."""
        n, s, labels = self.dataset.n, self.profile.s, self.dataset.labels
        variables = range(n * self.blocks)
        if self.heuristic == "lex":
            return sorted(variables, key=lambda v: (v // n, labels[v % n]))
        return sorted(variables, key=lambda v: (s[v % n], v // n, v % n))


def select_variable_minmis(state: SearchState, profile: MisProfile) -> Optional[int]:
    """Unfixed variable with the smallest support; ties go to the lowest (block, item)."""
    n, s = state.n, profile.s
    best = None
    for v, d in enumerate(state.domains):
        if d == UNFIXED and (best is None or s[v % n] < s[best % n]):
            best = v
    return best


def propagate_fixpoint(model: Model, state: SearchState) -> bool:
    """Run the propagators until none of them changes a domain.

    Returns False on failure. Propagators are idempotent, so the loop stops
    once every propagator has been stable since the last change.
    """
    props = model.propagators
    if not props:
        return True
    FAILURE, CHANGED = PropagationResult.FAILURE, PropagationResult.CHANGED
    count = len(props)
    quiet = 0
    idx = 0
    while quiet < count:
        r = props[idx].propagate(state)
        if r is FAILURE:
            return False
        quiet = 1 if r is CHANGED else quiet + 1
        idx = (idx + 1) % count
    return True


def _leaf(state: SearchState, model: Model) -> Optional[Solution]:
    n, labels = state.n, model.dataset.labels
    indices = []
    for b in range(state.blocks):
        items = tuple(state.P(b))
        if not items and not model.emit_empty:
            return None
        indices.append(items)
    itemsets = tuple(tuple(sorted(labels[i] for i in items)) for items in indices)
    return Solution(itemsets, tuple(indices))


def search(model: Model, stats: Optional[SearchStats] = None) -> Iterator[Solution]:
    """Enumerate all solutions of ``model`` depth-first, trying value 1 before 0.

    ``stats`` (created if omitted) is updated in place while solutions stream out.
    """
    if stats is None:
        stats = SearchStats()
    start = perf_counter()
    state = SearchState(model.dataset, model.blocks)
    order = model.variable_order()
    dom = state.domains
    decisions: list[tuple[int, int]] = []
    try:
        ok = propagate_fixpoint(model, state)
        if not ok:
            stats.fails += 1
        while True:
            if ok:
                var = next((v for v in order if dom[v] == UNFIXED), None)
                if var is not None:
                    state.push()
                    state.fix(var, 1)
                    decisions.append((var, 1))
                    stats.nodes += 1
                    ok = propagate_fixpoint(model, state)
                    if not ok:
                        stats.fails += 1
                    continue
                sol = _leaf(state, model)
                if sol is not None:
                    stats.solutions += 1
                    stats.elapsed = perf_counter() - start
                    yield sol
            # backtrack to the deepest decision whose 0-branch is still open
            while decisions:
                var, value = decisions.pop()
                state.pop()
                if value == 1:
                    state.push()
                    state.fix(var, 0)
                    decisions.append((var, 0))
                    stats.nodes += 1
                    ok = propagate_fixpoint(model, state)
                    if not ok:
                        stats.fails += 1
                    break
            else:
                return
    finally:
        stats.elapsed = perf_counter() - start


def solve(model: Model) -> tuple[list[Solution], SearchStats]:
    stats = SearchStats()
    solutions = list(search(model, stats))
    return solutions, stats


def replay(model: Model, decisions: Sequence[tuple[int, int]]) -> SearchState:
    """Fresh state with ``decisions`` applied one level each, propagating after each."""
    state = SearchState(model.dataset, model.blocks)
    propagate_fixpoint(model, state)
    for var, value in decisions:
        state.push()
        state.fix(var, value)
        propagate_fixpoint(model, state)
    return state
