"""Reproducible random instances.

The generator is a 32-bit linear congruential generator,
``x <- (1664525 * x + 1013904223) mod 2**32``, seeded with ``seed mod 2**32``.
Draws use the high bits: ``random() = x / 2**32`` and
``randint(lo, hi) = lo + (x * (hi - lo + 1)) >> 32``.

A dataset of ``n`` items and ``m`` transactions is drawn transaction by
transaction, item by item: item ``i`` (label ``i + 1``) is in transaction
``j`` iff ``random() < density``. Supports are then drawn item by item with
``randint(1, m)``.
"""

from __future__ import annotations

from .dataset import MisProfile, TransactionDataset

LCG_A = 1664525
LCG_C = 1013904223
LCG_M = 2**32


class LCG:
    def __init__(self, seed: int):
        self.state = seed % LCG_M

    def next_u32(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) % LCG_M
        return self.state

    def random(self) -> float:
        return self.next_u32() / LCG_M

    def randint(self, lo: int, hi: int) -> int:
        if hi < lo:
            raise ValueError("empty range")
        return lo + (self.next_u32() * (hi - lo + 1) >> 32)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()


def random_dataset(rng: LCG, n: int, m: int, density: float) -> TransactionDataset:
    rows = [[i + 1 for i in range(n) if rng.random() < density] for _ in range(m)]
    return TransactionDataset.from_transactions(rows, labels=range(1, n + 1))


def random_profile(rng: LCG, n: int, hi: int) -> MisProfile:
    return MisProfile(tuple(rng.randint(1, hi) for _ in range(n)))


def random_instance(rng: LCG, n: int, m: int, density: float):
    ds = random_dataset(rng, n, m, density)
    return ds, random_profile(rng, n, m)
