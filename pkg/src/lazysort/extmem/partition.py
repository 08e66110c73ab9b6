"""Splitting a range by memory-resident splitters in one read and one write pass."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from .blockstore import BlockStore, Extent, ExtentMap


def max_splitters(store: BlockStore) -> int:
    # one input block, d + 1 output buffers and one caller block must fit
    return max(0, min(store.m // 2, store.m - 3))


@dataclass
class PartitionResult:
    extents: list[Extent]
    pivots: list[int]
    comparisons: int
    equal_left: list[int]  # per bucket: keys equal to the sample on its left


def d_way_partition(store: BlockStore, emap: ExtentMap, lo: int, hi: int,
                    samples: np.ndarray) -> PartitionResult:
    """Distribute positions ``lo..hi-1`` into ``d + 1`` block-aligned streams.

    ``samples`` (sorted, drawn from the range) are the splitters.  Keys
    strictly below sample ``k`` fall left of it, keys equal or above fall
    right.  Stream ``0`` holds bucket 0; stream ``k`` starts with sample
    ``k - 1`` followed by bucket ``k``, so every sample lands at a known
    position and can be marked as a pivot.  One occurrence of each sample
    value is claimed from the input so the multiset is preserved.

    The caller installs the returned extents.  I/O: one read per spanned block, one write per output
    block, at most ``2n + d + 1`` in total.
    """
    samples = np.ascontiguousarray(samples, dtype=np.int64)
    d = len(samples)
    if d > max_splitters(store):
        raise ValueError(f"{d} splitters exceed the memory budget")
    B = store.B
    claimed = np.zeros(d, dtype=np.uint8)
    bufs: list[list[np.ndarray]] = [[] for _ in range(d + 1)]
    fill = [0] * (d + 1)
    blocks: list[list[int]] = [[] for _ in range(d + 1)]
    sizes = [0] * (d + 1)
    equal_left = [0] * (d + 1)
    cmps = 0

    def emit(j: int, vals: np.ndarray) -> None:
        while len(vals):
            take = min(B - fill[j], len(vals))
            bufs[j].append(vals[:take])
            fill[j] += take
            sizes[j] += take
            vals = vals[take:]
            if fill[j] == B:
                flush(j)

    def flush(j: int) -> None:
        if fill[j]:
            bid = store.alloc()
            store.write(bid, np.concatenate(bufs[j]))
            blocks[j].append(bid)
            bufs[j], fill[j] = [], 0

    with store.hold(d + 2):
        for k in range(d):
            emit(k + 1, samples[k:k + 1])
        for bid, i0, i1, _ in emap.pieces(lo, hi):
            piece = np.ascontiguousarray(store.read(bid)[i0:i1])
            out = np.empty(len(piece), dtype=np.int64)
            cmps += kernels.distribute(piece, 0, len(piece), samples, claimed, out)
            keep = out >= 0
            flagged = out > d
            if flagged.any():
                out[flagged] -= d + 1
                equal_left_add = np.bincount(out[flagged], minlength=d + 1)
                for j in range(d + 1):
                    equal_left[j] += int(equal_left_add[j])
            if keep.all():
                order = np.argsort(out, kind="stable")
                dest = out[order]
                vals = piece[order]
            else:
                order = np.argsort(out[keep], kind="stable")
                dest = out[keep][order]
                vals = piece[keep][order]
            cuts = np.searchsorted(dest, np.arange(d + 2))
            for j in range(d + 1):
                if cuts[j + 1] > cuts[j]:
                    emit(j, vals[cuts[j]:cuts[j + 1]])
        for j in range(d + 1):
            flush(j)
    if d and not claimed.all():
        raise ValueError("splitters must be drawn from the range")
    extents, pivots, pos = [], [], lo
    for j in range(d + 1):
        extents.append(Extent(pos, sizes[j], blocks[j], 0))
        if j:
            pivots.append(pos)
        pos += sizes[j]
    assert pos == hi
    return PartitionResult(extents, pivots, cmps, equal_left)
