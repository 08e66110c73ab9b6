"""Baseline m-way external mergesort on the simulated disk."""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from .blockstore import BlockStore, Extent, ExtentMap


def _write_run(store: BlockStore, vals: np.ndarray) -> list[int]:
    ids = []
    for s in range(0, len(vals), store.B):
        bid = store.alloc()
        store.write(bid, vals[s:s + store.B])
        ids.append(bid)
    return ids


def _merge_group(store: BlockStore, runs: list[tuple[list[int], int]]) -> tuple[tuple[list[int], int], int]:
    # block-at-a-time k-way merge: everything up to the smallest buffered
    # maximum is safe to emit, and that buffer is drained on every round
    k = len(runs)
    B = store.B
    next_blk = [0] * k
    bufs: list[np.ndarray] = []
    left = [n for _, n in runs]
    out_ids: list[int] = []
    pending = np.empty(0, dtype=np.int64)
    total = sum(left)
    with store.hold(k + 1):
        for r, (ids, _) in enumerate(runs):
            bufs.append(store.read(ids[0])[:min(B, left[r])])
            next_blk[r] = 1
            left[r] -= len(bufs[r])
        while True:
            live = [r for r in range(k) if len(bufs[r])]
            if not live:
                break
            bound = min(bufs[r][-1] for r in live)
            take = []
            for r in live:
                c = int(np.searchsorted(bufs[r], bound, side="right"))
                take.append(bufs[r][:c])
                bufs[r] = bufs[r][c:]
                if not len(bufs[r]) and left[r] > 0:
                    blk = store.read(runs[r][0][next_blk[r]])
                    next_blk[r] += 1
                    bufs[r] = blk[:min(B, left[r])]
                    left[r] -= len(bufs[r])
            pending = np.concatenate([pending] + take)
            pending.sort(kind="stable")
            full = len(pending) // B * B
            if full:
                out_ids.extend(_write_run(store, pending[:full]))
                pending = pending[full:]
        if len(pending):
            out_ids.extend(_write_run(store, pending))
    # a tournament tree spends ceil(log2 k) comparisons per output key
    return (out_ids, total), total * max(1, math.ceil(math.log2(k)))


def external_mergesort(store: BlockStore, emap: ExtentMap, lo: int, hi: int) -> tuple[Extent, int]:
    """Sort positions ``lo..hi-1``; returns the sorted extent and the comparison count.

    Runs of ``m`` blocks are sorted in memory, then merged ``m - 1`` at a time.
    """
    m, B = store.m, store.B
    pieces = list(emap.pieces(lo, hi))
    runs: list[tuple[list[int], int]] = []
    cmps = 0
    for s in range(0, len(pieces), m):
        chunk = pieces[s:s + m]
        with store.hold(len(chunk)):
            vals = np.ascontiguousarray(np.concatenate([store.read(b)[i0:i1] for b, i0, i1, _ in chunk]))
            cmps += kernels.merge_sort(vals, 0, len(vals), np.empty_like(vals))
            runs.append((_write_run(store, vals), len(vals)))
    while len(runs) > 1:
        merged = []
        for s in range(0, len(runs), m - 1):
            group = runs[s:s + m - 1]
            if len(group) == 1:
                merged.append(group[0])
                continue
            run, c = _merge_group(store, group)
            cmps += c
            merged.append(run)
        runs = merged
    ids, n = runs[0] if runs else ([], 0)
    return Extent(lo, n, ids, 0), cmps


def mergesort_ios(values, B: int, M: int) -> tuple[np.ndarray, int]:
    """Sort ``values`` from disk; returns the sorted keys and the I/O count."""
    store = BlockStore(B, M)
    vals = np.asarray(values, dtype=np.int64)
    emap = ExtentMap(B, [Extent(1, len(vals), store.place(vals), 0)])
    ext, _ = external_mergesort(store, emap, 1, len(vals) + 1)
    emap.replace(1, len(vals) + 1, [ext])
    out = np.concatenate([store.peek(b)[i0:i1] for b, i0, i1, _ in emap.pieces(1, len(vals) + 1)])
    return out, store.ios
