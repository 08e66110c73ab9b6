"""Comparison ledger, query bookkeeping and the entropy lower bounds."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field, fields

import numpy as np

PHASES = ("merge_cmp", "pivot_cmp", "partition_cmp", "search_cmp", "sort_cmp")


@dataclass
class ComparisonLedger:
    """Element comparisons tallied by algorithm phase."""

    merge_cmp: int = 0
    pivot_cmp: int = 0
    partition_cmp: int = 0
    search_cmp: int = 0
    sort_cmp: int = 0

    def charge(self, phase: str, count: int) -> None:
        if count < 0:
            raise ValueError("comparison counts are nonnegative")
        if phase not in PHASES:
            raise KeyError(phase)
        setattr(self, phase, getattr(self, phase) + int(count))

    def total(self) -> int:
        return self.merge_cmp + self.pivot_cmp + self.partition_cmp + self.search_cmp + self.sort_cmp

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def copy(self) -> ComparisonLedger:
        return ComparisonLedger(**self.as_dict())

    def __sub__(self, other: ComparisonLedger) -> ComparisonLedger:
        return ComparisonLedger(**{k: v - getattr(other, k) for k, v in self.as_dict().items()})


class _LogFactorials:
    # prefix sums of log2(k); grown on demand, never approximated
    def __init__(self) -> None:
        self._table = np.zeros(1)

    def __call__(self, k):
        k = np.asarray(k, dtype=np.int64)
        top = int(k.max()) if k.size else 0
        if top >= len(self._table):
            size = max(top + 1, 2 * len(self._table))
            logs = np.log2(np.arange(1, size, dtype=np.float64))
            self._table = np.concatenate(([0.0], np.cumsum(logs)))
        return self._table[k]


log2_factorial = _LogFactorials()


@dataclass
class QuerySet:
    """Sorted distinct query ranks in ``[1, n]`` with sentinels ``0`` and ``n``."""

    n: int
    positions: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        pos = sorted(set(int(p) for p in self.positions))
        if pos and (pos[0] < 1 or pos[-1] > self.n):
            raise ValueError("query rank outside [1, n]")
        self.positions = pos

    def add(self, rank: int) -> None:
        if not 1 <= rank <= self.n:
            raise ValueError("query rank outside [1, n]")
        i = bisect.bisect_left(self.positions, rank)
        if i == len(self.positions) or self.positions[i] != rank:
            self.positions.insert(i, rank)

    def __len__(self) -> int:
        return len(self.positions)

    def __contains__(self, rank: int) -> bool:
        i = bisect.bisect_left(self.positions, rank)
        return i < len(self.positions) and self.positions[i] == rank


def gap_vector(S: QuerySet) -> list[int]:
    """Gaps ``s_{i+1} - s_i`` over ``0, s_1, ..., s_t, n``."""
    bounds = [0, *S.positions, S.n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def entropy_lower_bound(S: QuerySet) -> float:
    """``log2(n!) - sum(log2(gap!))`` in bits."""
    gaps = gap_vector(S)
    value = float(log2_factorial(S.n)) - float(np.sum(log2_factorial(gaps)))
    return max(value, 0.0)


def io_lower_bound(S: QuerySet, B: int, m: int) -> float:
    """Block-transfer lower bound for answering ``S`` with ``m`` memory blocks.

    Counts ``x * log_m(x)`` for ``x = n`` blocks minus the same term for
    every gap measured in blocks, with the term taken as zero whenever the
    amount fits in memory (``x <= m``).  ``n`` is rounded up to whole blocks.
    """
    if m < 2:
        raise ValueError("memory must hold at least two blocks")
    if B < 1:
        raise ValueError("block size must be positive")

    def term(x: float) -> float:
        return x * math.log(x, m) if x > m else 0.0

    n_blocks = math.ceil(S.n / B)
    value = term(n_blocks) - sum(term(g / B) for g in gap_vector(S))
    return max(value, 0.0)


@dataclass
class PivotSet:
    """Sorted positions of all settled pivots."""

    n: int
    positions: list[int]

    def as_query_set(self) -> QuerySet:
        return QuerySet(self.n, list(self.positions))
