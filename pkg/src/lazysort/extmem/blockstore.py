"""Simulated two-level memory with block-transfer accounting."""

from __future__ import annotations

import bisect
import json
import math
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np


class MemoryBudgetError(RuntimeError):
    """More blocks pinned in memory than the budget allows."""


class BlockStore:
    """Disk of fixed-size blocks plus a memory budget of ``m = M // B`` blocks.

    Every ``read``/``write`` is one counted I/O.  Algorithms declare what
    they hold in memory with ``hold``; exceeding ``m`` blocks raises.
    """

    def __init__(self, B: int, M: int, *, kappa: float | None = None, trace: bool = False):
        if B < 1 or 2 * B > M:
            raise ValueError("need 1 <= B <= M/2")
        self.B = B
        self.M = M
        self.m = M // B
        self.kappa = kappa
        self._disk: list[np.ndarray] = []
        self.io_reads = 0
        self.io_writes = 0
        self.pinned = 0
        self.peak_pinned = 0
        self.trace: list[dict] | None = [] if trace else None

    # ---- accounting ---------------------------------------------------

    @property
    def ios(self) -> int:
        return self.io_reads + self.io_writes

    def counters(self) -> tuple[int, int]:
        return self.io_reads, self.io_writes

    def note(self, op: str) -> None:
        if self.trace is not None:
            self.trace.append({"op": op, "io_reads": self.io_reads, "io_writes": self.io_writes,
                               "cumulative": self.ios})

    def dump_trace(self, fh) -> None:
        for rec in self.trace or []:
            fh.write(json.dumps(rec) + "\n")

    def charge(self, reads: int = 0, writes: int = 0) -> None:
        """Count transfers of structures not kept as raw element blocks (tree nodes)."""
        self.io_reads += reads
        self.io_writes += writes

    def pin(self, k: int = 1) -> None:
        self.pinned += k
        if self.pinned > self.m:
            self.pinned -= k
            raise MemoryBudgetError(f"{self.pinned + k} blocks pinned, budget {self.m}")
        self.peak_pinned = max(self.peak_pinned, self.pinned)

    def unpin(self, k: int = 1) -> None:
        self.pinned -= k
        assert self.pinned >= 0

    @contextmanager
    def hold(self, k: int):
        self.pin(k)
        try:
            yield
        finally:
            self.unpin(k)

    def check_log_condition(self, N: int) -> bool:
        """``log2 N <= kappa * B`` when a ``kappa`` is configured."""
        return self.kappa is None or math.log2(max(N, 2)) <= self.kappa * self.B

    # ---- blocks -------------------------------------------------------

    def alloc(self) -> int:
        self._disk.append(np.zeros(self.B, dtype=np.int64))
        return len(self._disk) - 1

    def read(self, bid: int) -> np.ndarray:
        self.io_reads += 1
        return self._disk[bid].copy()

    def write(self, bid: int, data: np.ndarray) -> None:
        self.io_writes += 1
        blk = self._disk[bid]
        blk[:len(data)] = data

    def place(self, values) -> list[int]:
        """Lay values out on fresh blocks without charging I/O (initial input)."""
        vals = np.asarray(values, dtype=np.int64)
        ids = []
        for s in range(0, len(vals), self.B):
            bid = self.alloc()
            self._disk[bid][:len(vals[s:s + self.B])] = vals[s:s + self.B]
            ids.append(bid)
        return ids

    def peek(self, bid: int) -> np.ndarray:
        # uncounted view for tests and oracles only
        return self._disk[bid]


@dataclass
class Extent:
    """Logical positions ``start .. start + length - 1`` stored in ``blocks``.

    Element ``k`` of the extent sits in ``blocks[(offset + k) // B]`` at
    index ``(offset + k) % B``.
    """

    start: int
    length: int
    blocks: list[int]
    offset: int = 0

    @property
    def end(self) -> int:
        return self.start + self.length


@dataclass
class ExtentMap:
    """Memory-resident directory from logical positions to disk blocks."""

    B: int
    extents: list[Extent] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._starts = [e.start for e in self.extents]

    def find(self, pos: int) -> int:
        i = bisect.bisect_right(self._starts, pos) - 1
        if i < 0 or pos >= self.extents[i].end:
            raise IndexError(pos)
        return i

    def where(self, pos: int) -> tuple[int, int]:
        e = self.extents[self.find(pos)]
        k = e.offset + pos - e.start
        return e.blocks[k // self.B], k % self.B

    def pieces(self, lo: int, hi: int):
        """``(block, i0, i1, pos0)`` covering positions ``lo..hi-1`` in order."""
        if lo >= hi:
            return
        i = self.find(lo)
        pos = lo
        while pos < hi:
            e = self.extents[i]
            top = min(hi, e.end)
            while pos < top:
                k = e.offset + pos - e.start
                b, off = divmod(k, self.B)
                take = min(self.B - off, top - pos)
                yield e.blocks[b], off, off + take, pos
                pos += take
            i += 1

    def block_count(self, lo: int, hi: int) -> int:
        return sum(1 for _ in self.pieces(lo, hi))

    def replace(self, lo: int, hi: int, new: list[Extent]) -> None:
        """Positions ``lo..hi-1`` now live in ``new`` (which must tile them)."""
        out = []
        for e in self.extents:
            if e.end <= lo or e.start >= hi:
                out.append(e)
                continue
            if e.start < lo:
                out.append(Extent(e.start, lo - e.start, e.blocks, e.offset))
            if e.end > hi:
                k = e.offset + hi - e.start
                out.append(Extent(hi, e.end - hi, e.blocks[k // self.B:], k % self.B))
        out.extend(x for x in new if x.length > 0)
        out.sort(key=lambda x: x.start)
        self.extents = out
        self._starts = [e.start for e in out]
