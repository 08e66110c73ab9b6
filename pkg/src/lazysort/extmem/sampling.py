"""One-pass equidistant sampling (Munro–Paterson buffer collapsing)."""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from .blockstore import BlockStore, ExtentMap


def _sort(vals: np.ndarray) -> int:
    buf = np.empty_like(vals)
    return kernels.merge_sort(vals, 0, len(vals), buf)


def _collapse(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, int]:
    # merge two sorted equal-weight buffers and keep the upper of each pair
    z = np.concatenate((x, y))
    buf = np.empty_like(z)
    cmps = kernels.merge(z, 0, len(x), len(z), buf)
    return np.ascontiguousarray(z[1::2]), cmps


def buffer_size(N: int, M: int, B: int, d: int) -> int:
    # at most log2 N + 1 levels plus the fill buffer, leaving room for the
    # input block, the rounding slack and one caller-owned block
    return max(d, (M - 3 * B) // (math.ceil(math.log2(max(N, 2))) + 2))


def ms_sample(store: BlockStore, emap: ExtentMap, lo: int, hi: int, d: int) -> tuple[np.ndarray, int]:
    """``d`` sorted samples of positions ``lo..hi-1`` in one read pass.

    Buffers of ``s`` sorted keys form a binary-counter hierarchy; two
    buffers of the same level collapse into one at the next level holding
    the upper element of every merged pair, so each kept key stands for
    ``2^level`` inputs and the weighted rank of any key never exceeds its
    true rank.  The ``j``-th sample is the first key whose weighted rank
    reaches ``j * N / d``.  Returns ``(samples, comparisons)``.
    """
    N = hi - lo
    if N <= 0:
        raise ValueError("empty range")
    if not 1 <= d or d > N or d >= store.M / math.log2(max(N, 2)):
        raise ValueError(f"sample count {d} out of range for N={N}, M={store.M}")
    s = buffer_size(N, store.M, store.B, d)
    B = store.B
    levels: dict[int, np.ndarray] = {}
    fill: list[np.ndarray] = []
    fill_len = 0
    cmps = 0
    held = 0

    def rehold(extra: int = 0) -> None:
        nonlocal held
        total = sum(len(v) for v in levels.values()) + fill_len + extra
        need = -(-total // B) + 1
        store.unpin(held)
        store.pin(need)
        held = need

    def push(buf: np.ndarray) -> None:
        nonlocal cmps
        k = 0
        while k in levels:
            buf, c = _collapse(levels.pop(k), buf)
            cmps += c
            k += 1
        levels[k] = buf

    for bid, i0, i1, _ in emap.pieces(lo, hi):
        rehold()
        blk = store.read(bid)[i0:i1]
        while len(blk):
            take = min(s - fill_len, len(blk))
            fill.append(blk[:take])
            fill_len += take
            blk = blk[take:]
            if fill_len == s:
                full = np.concatenate(fill)
                cmps += _sort(full)
                fill, fill_len = [], 0
                push(full)
                rehold()
    vals = [levels[k] for k in sorted(levels)]
    wts = [np.full(len(levels[k]), 1 << k, dtype=np.int64) for k in sorted(levels)]
    if fill_len:
        tail = np.concatenate(fill)
        cmps += _sort(tail)
        vals.append(tail)
        wts.append(np.ones(len(tail), dtype=np.int64))
    allv = np.ascontiguousarray(np.concatenate(vals))
    allw = np.ascontiguousarray(np.concatenate(wts))
    buf, tbuf = np.empty_like(allv), np.empty_like(allw)
    cmps += kernels.merge_sort(allv, 0, len(allv), buf, allw, tbuf)
    store.unpin(held)
    cum = np.cumsum(allw)
    # first key whose weighted rank reaches j*N/d, using exact integer targets
    targets = -(-np.arange(1, d + 1, dtype=np.int64) * N // d)
    idx = np.searchsorted(cum, targets, side="left")
    idx = np.minimum(idx, len(allv) - 1)
    return allv[idx].copy(), cmps


def rank_window(N: int, d: int, j: int) -> tuple[float, float]:
    """Allowed true-rank window for the ``j``-th of ``d`` samples."""
    step = N / d
    return j * step - d, (j + math.log2(N / d) - 1) * step
