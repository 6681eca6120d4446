"""Query models Q0-Q3 assembled from propagators."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .dataset import MisProfile, TransactionDataset
from .engine import Model, SearchStats, Solution, solve
from .propagators import Disjoint, DistanceMIS, FreqRare, LexLess, MinCardinality

KINDS = ("q0", "q1", "q2", "q3")
MODES = ("disjoint", "distinct")


@dataclass(frozen=True)
class QuerySpec:
    """Parameters of one query.

    q0 mines all MIS-frequent itemsets, q1 adds the support-distance bound
    ``ub``, q2 adds the minimum size ``c``, and q3 asks for ``k`` itemsets
    that each satisfy q2 and are pairwise disjoint or pairwise distinct.
    """

    kind: str = "q0"
    ub: Optional[int] = None
    c: Optional[int] = None
    k: Optional[int] = None
    mode: str = "disjoint"
    symmetry_breaking: bool = True

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ValueError(f"unknown query {self.kind!r}")
        if kind in ("q1", "q2", "q3") and self.ub is None:
            raise ValueError(f"{kind} requires ub")
        if kind in ("q2", "q3") and self.c is None:
            raise ValueError(f"{kind} requires c")
        if kind == "q3":
            if self.k is None or self.k < 2:
                raise ValueError("q3 requires k >= 2")
            if self.mode not in MODES:
                raise ValueError(f"unknown q3 mode {self.mode!r}")
        if self.ub is not None and self.ub < 0:
            raise ValueError("ub must be >= 0")
        if self.c is not None and self.c < 0:
            raise ValueError("c must be >= 0")


def build_model(
    ds: TransactionDataset,
    profile: MisProfile,
    spec: QuerySpec,
    heuristic: str = "minmis",
) -> Model:
    blocks = spec.k if spec.kind == "q3" else 1
    freq = [FreqRare(ds, profile, b) for b in range(blocks)]
    rest = []
    if spec.kind != "q0":
        rest += [DistanceMIS(profile, spec.ub, b) for b in range(blocks)]
    if spec.kind in ("q2", "q3"):
        rest += [MinCardinality(spec.c, b) for b in range(blocks)]
    if spec.kind == "q3":
        if spec.mode == "disjoint":
            rest += [Disjoint(p, q) for p, q in combinations(range(blocks), 2)]
        if spec.mode == "distinct" or spec.symmetry_breaking:
            rest += [LexLess(b, b + 1, strict=True) for b in range(blocks - 1)]
    return Model(ds, profile, blocks, freq + rest, heuristic)


def solve_query(
    ds: TransactionDataset,
    profile: MisProfile,
    spec: QuerySpec,
    heuristic: str = "minmis",
) -> tuple[list[Solution], SearchStats]:
    return solve(build_model(ds, profile, spec, heuristic))
