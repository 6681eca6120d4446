"""Itemset mining under multiple minimum item supports, by constraint propagation."""

from .dataset import (
    DatasetError,
    DatasetStats,
    MisProfile,
    TidSet,
    TransactionDataset,
    assign_mis,
    cover,
    frequency,
    parse_fimi,
    read_fimi,
    read_mis,
    serialize_fimi,
    stats,
    write_mis,
)
from .engine import Model, SearchState, SearchStats, Solution, search, solve
from .queries import QuerySpec, build_model, solve_query

__version__ = "0.1.0"
