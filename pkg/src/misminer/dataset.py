"""Transaction datasets, vertical covers and minimum item support profiles.

Covers are stored as Python ints used as bit-vectors: bit ``j`` of
``covers[i]`` is set iff item ``i`` occurs in transaction ``j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, TextIO, Union

Number = Union[int, float, str, Fraction]

ROUNDINGS = ("ceil", "floor", "round-half-up")


class DatasetError(ValueError):
    """Malformed transaction or MIS input."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


@dataclass(frozen=True)
class TidSet:
    """A set of transaction ids over a dataset of ``m`` transactions."""

    bits: int
    m: int

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __and__(self, other: TidSet) -> TidSet:
        if self.m != other.m:
            raise ValueError("tidsets come from datasets of different size")
        return TidSet(self.bits & other.bits, self.m)

    def __contains__(self, tid: int) -> bool:
        return 0 <= tid < self.m and bool(self.bits >> tid & 1)

    def tids(self) -> list[int]:
        return [j for j in range(self.m) if self.bits >> j & 1]


@dataclass(frozen=True)
class TransactionDataset:
    """Immutable bag of transactions over ``n`` dense item indices.

    ``labels[i]`` is the external id of item ``i``. ``transactions`` keeps the
    horizontal form (frozensets of dense indices) next to the per-item covers.
    """

    labels: tuple[int, ...]
    transactions: tuple[frozenset, ...]
    covers: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.transactions)

    @property
    def full(self) -> int:
        """Bit-vector with all ``m`` transactions set."""
        return (1 << self.m) - 1

    @classmethod
    def from_transactions(
        cls,
        transactions: Iterable[Iterable[int]],
        labels: Sequence[int] | None = None,
    ) -> TransactionDataset:
        """Build a dataset from transactions given as external item ids.

        Without ``labels``, dense indices follow first appearance. With
        ``labels``, the item universe is fixed (items may have frequency 0)
        and every id must belong to it.
        """
        rows = [list(dict.fromkeys(t)) for t in transactions]
        if labels is None:
            labels = list(dict.fromkeys(item for row in rows for item in row))
        labels = tuple(labels)
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            raise DatasetError("duplicate item labels")
        covers = [0] * len(labels)
        dense_rows = []
        for j, row in enumerate(rows):
            try:
                dense = frozenset(index[item] for item in row)
            except KeyError as exc:
                raise DatasetError(f"unknown item {exc.args[0]}") from None
            for i in dense:
                covers[i] |= 1 << j
            dense_rows.append(dense)
        return cls(labels, tuple(dense_rows), tuple(covers))

    def index_of(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None


def parse_fimi(text: str | TextIO) -> TransactionDataset:
    """Parse FIMI text: one transaction per nonblank line, integer item ids."""
    lines = text.splitlines() if isinstance(text, str) else text
    rows = []
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        row = []
        for tok in tokens:
            if not (tok.isascii() and tok.isdigit()):
                raise DatasetError(f"invalid item id {tok!r}", lineno)
            row.append(int(tok))
        rows.append(row)
    if not rows:
        raise DatasetError("dataset has no transactions")
    return TransactionDataset.from_transactions(rows)


def read_fimi(path: str | Path) -> TransactionDataset:
    with open(path, encoding="utf-8") as fh:
        return parse_fimi(fh)


def serialize_fimi(ds: TransactionDataset) -> str:
    """Inverse of :func:`parse_fimi`; items are written in dense index order."""
    return "".join(
        " ".join(str(ds.labels[i]) for i in sorted(t)) + "\n" for t in ds.transactions
    )


def _check_items(ds: TransactionDataset, itemset: Iterable[int]) -> list[int]:
    items = list(itemset)
    for i in items:
        if not 0 <= i < ds.n:
            raise IndexError(f"item index {i} out of range for {ds.n} items")
    return items


def cover(ds: TransactionDataset, itemset: Iterable[int]) -> TidSet:
    """Transactions containing every item of ``itemset`` (all of them if empty)."""
    bits = ds.full
    for i in _check_items(ds, itemset):
        bits &= ds.covers[i]
    return TidSet(bits, ds.m)


def frequency(ds: TransactionDataset, itemset: Iterable[int]) -> int:
    return len(cover(ds, itemset))


@dataclass(frozen=True)
class MisProfile:
    """Absolute minimum item supports, indexed by dense item index."""

    s: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(v) for v in self.s))
        for i, v in enumerate(self.s):
            if v < 1:
                raise ValueError(f"support of item {i} is {v}, must be >= 1")

    def __len__(self) -> int:
        return len(self.s)

    def __getitem__(self, i: int) -> int:
        return self.s[i]

    @classmethod
    def uniform(cls, n: int, value: int) -> MisProfile:
        return cls((value,) * n)


def _exact(x: Number) -> Fraction:
    # floats go through their shortest repr so 0.1 means 1/10
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _round(x: Fraction, rounding: str) -> int:
    if rounding == "ceil":
        return math.ceil(x)
    if rounding == "floor":
        return math.floor(x)
    if rounding == "round-half-up":
        return math.floor(x + Fraction(1, 2))
    raise ValueError(f"unknown rounding {rounding!r}, expected one of {ROUNDINGS}")


def assign_mis(
    ds: TransactionDataset,
    beta: Number,
    mis_min: Number,
    *,
    relative: bool = False,
    rounding: str = "ceil",
) -> MisProfile:
    """Frequency-proportional supports ``s_i = max(beta * freq(i), mis_min)``.

    Parameters
    ----------
    beta : number in [0, 1]
    mis_min : number
        Lowest support an item can get. An absolute count (>= 1) unless
        ``relative`` is set, in which case a fraction of ``m`` in (0, 1].
    rounding : {"ceil", "floor", "round-half-up"}
        Applied to both ``beta * freq(i)`` and the converted ``mis_min``.
        Results are clamped to at least 1.
    """
    b = _exact(beta)
    if not 0 <= b <= 1:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    lo = _exact(mis_min)
    if relative:
        if not 0 < lo <= 1:
            raise ValueError(f"relative mis_min must lie in (0, 1], got {mis_min}")
        lo = lo * ds.m
    elif lo < 1:
        raise ValueError(f"absolute mis_min must be >= 1, got {mis_min}")
    floor_support = _round(lo, rounding)
    s = [
        max(_round(b * c.bit_count(), rounding), floor_support, 1) for c in ds.covers
    ]
    return MisProfile(tuple(s))


@dataclass(frozen=True)
class DatasetStats:
    transactions: int
    items: int
    avg_transaction_size: Fraction
    density: Fraction

    def __str__(self) -> str:
        return (
            f"{self.transactions} transactions, {self.items} items, "
            f"density {float(self.density) * 100:.1f}%, "
            f"avg transaction size {float(self.avg_transaction_size):.2f}"
        )


def stats(ds: TransactionDataset) -> DatasetStats:
    occurrences = sum(len(t) for t in ds.transactions)
    avg = Fraction(occurrences, ds.m)
    density = avg / ds.n if ds.n else Fraction(0)
    return DatasetStats(ds.m, ds.n, avg, density)


def parse_mis(text: str | TextIO, ds: TransactionDataset) -> MisProfile:
    """Read ``<external item id> <absolute support>`` lines for every item of ``ds``."""
    lines = text.splitlines() if isinstance(text, str) else text
    index = {label: i for i, label in enumerate(ds.labels)}
    s: list[int | None] = [None] * ds.n
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 2 or not all(t.isascii() and t.lstrip("-").isdigit() for t in tokens):
            raise DatasetError(f"expected '<item> <support>', got {line.strip()!r}", lineno)
        label, support = int(tokens[0]), int(tokens[1])
        if label not in index:
            raise DatasetError(f"unknown item {label}", lineno)
        if support < 1:
            raise DatasetError(f"support of item {label} must be >= 1", lineno)
        if s[index[label]] is not None:
            raise DatasetError(f"item {label} listed twice", lineno)
        s[index[label]] = support
    missing = [ds.labels[i] for i, v in enumerate(s) if v is None]
    if missing:
        raise DatasetError(f"no support given for items {missing}")
    return MisProfile(tuple(s))


def read_mis(source: str | Path | TextIO, ds: TransactionDataset) -> MisProfile:
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return parse_mis(fh, ds)
    return parse_mis(source, ds)


def format_mis(profile: MisProfile, ds: TransactionDataset) -> str:
    if len(profile) != ds.n:
        raise ValueError("profile does not match dataset")
    return "".join(f"{label} {s}\n" for label, s in zip(ds.labels, profile.s))


def write_mis(profile: MisProfile, ds: TransactionDataset, dest: str | Path | TextIO) -> None:
    text = format_mis(profile, ds)
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)
