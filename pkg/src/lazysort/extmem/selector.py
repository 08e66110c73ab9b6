"""Online multiselection on the simulated disk.

An unsettled interval that does not fit in memory is cut with ``d``
well-spaced samples (one sampling pass, one partition pass); one that fits
is loaded, sorted and written back.  The mark bitvector and the extent
directory stay in memory; every settled pivot also goes into a B-tree so
that value searches find their interval in ``O(log_B N)`` I/Os.
"""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from ..bitvec import MarkBitvector
from ..core_model import ComparisonLedger
from .blockstore import BlockStore, Extent, ExtentMap
from .btree import PivotBTree
from .partition import d_way_partition, max_splitters
from .sampling import ms_sample


class ExternalSelector:
    """Rank selection and value search over ``N`` keys stored in blocks."""

    def __init__(self, values, B: int = 64, M: int = 4096, *, d: int | None = None,
                 store: BlockStore | None = None, ledger: ComparisonLedger | None = None,
                 trace: bool = False):
        vals = np.array(values, dtype=np.int64).ravel()
        if vals.size == 0:
            raise ValueError("cannot preprocess an empty array")
        self._configure(B=B, M=M, d=d, store=store, trace=trace)
        self._setup(vals, ledger, counted=False)
        self._preprocess()

    @classmethod
    def _from_state(cls, a: np.ndarray, ledger, **kw) -> ExternalSelector:
        # a fresh array written to disk (counted) and left unpreprocessed
        obj = cls.__new__(cls)
        obj._configure(**kw)
        obj._setup(np.ascontiguousarray(a, dtype=np.int64), ledger, counted=True)
        return obj

    def _configure(self, B: int = 64, M: int = 4096, d: int | None = None,
                   store: BlockStore | None = None, trace: bool = False) -> None:
        self.store = store if store is not None else BlockStore(B, M, trace=trace)
        if self.store.m < 4:
            raise ValueError("need at least four blocks of memory")
        cap = max_splitters(self.store)
        self.d = min(d if d is not None else max(2, self.store.m // 2), cap)
        if self.d < 1:
            raise ValueError("memory too small for a partition pass")

    def _setup(self, a: np.ndarray, ledger, counted: bool) -> None:
        store = self.store
        self.n = len(a)
        self.ledger = ledger if ledger is not None else ComparisonLedger()
        blocks = store.place(a)
        if counted:
            store.charge(writes=len(blocks))
        self.emap = ExtentMap(store.B, [Extent(1, self.n, blocks, 0)] if self.n else [])
        self.B = MarkBitvector(self.n)
        # partition pivots: every key left of them in their range is strictly smaller
        self.strict = bytearray(self.n + 2)
        self.tree = PivotBTree(store)
        self._cache_bid = -1
        self._cache = None
        self.min_val = self.max_val = None

    # ---- element access through a one-block cache -----------------------

    def _block(self, bid: int) -> np.ndarray:
        if bid != self._cache_bid:
            self._cache = self.store.read(bid)
            self._cache_bid = bid
        return self._cache

    def value_at(self, pos: int) -> int:
        bid, off = self.emap.where(pos)
        with self.store.hold(1):
            return int(self._block(bid)[off])

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        """Keys at positions ``lo..hi-1`` (one read per spanned block)."""
        out = []
        with self.store.hold(1):
            for bid, i0, i1, _ in self.emap.pieces(lo, hi):
                out.append(self.store.read(bid)[i0:i1])
        return np.concatenate(out) if out else np.empty(0, dtype=np.int64)

    def _swap(self, i: int, j: int) -> None:
        if i == j:
            return
        bi, oi = self.emap.where(i)
        bj, oj = self.emap.where(j)
        store = self.store
        with store.hold(2):
            blk_i = store.read(bi)
            blk_j = blk_i if bj == bi else store.read(bj)
            blk_i[oi], blk_j[oj] = blk_j[oj], blk_i[oi]
            store.write(bi, blk_i)
            if bj != bi:
                store.write(bj, blk_j)
        self._cache_bid = -1

    # ---- preprocessing --------------------------------------------------

    def _preprocess(self) -> None:
        store = self.store
        best_lo = best_hi = None
        pmin = pmax = 1
        cmps = 0
        with store.hold(1):
            for bid, i0, i1, pos0 in self.emap.pieces(1, self.n + 1):
                piece = np.ascontiguousarray(store.read(bid)[i0:i1])
                lo_i, hi_i, c = kernels.minmax(piece, 0, len(piece))
                cmps += c
                if best_lo is None:
                    best_lo, pmin, best_hi, pmax = piece[lo_i], pos0 + lo_i, piece[hi_i], pos0 + hi_i
                    continue
                cmps += 2
                if piece[lo_i] < best_lo:
                    best_lo, pmin = piece[lo_i], pos0 + lo_i
                if piece[hi_i] > best_hi:
                    best_hi, pmax = piece[hi_i], pos0 + hi_i
        self.ledger.charge("partition_cmp", cmps)
        self._swap(1, pmin)
        if pmax == 1:
            pmax = pmin
        self._swap(self.n, pmax)
        self.ensure_ends(known=(int(best_lo), int(best_hi)))
        store.note("preprocess")

    def ensure_ends(self, known: tuple[int, int] | None = None) -> None:
        """Settle positions 1 and n and register them as pivots."""
        for end in (1, self.n):
            if not self.B.is_marked(end):
                if known is None:
                    self.select(end)
                else:
                    self.B.mark(end)
        lo_v, hi_v = known if known is not None else (self.value_at(1), self.value_at(self.n))
        self.min_val, self.max_val = lo_v, hi_v
        self.tree.insert_many({(lo_v, 1), (hi_v, self.n)})

    def adopt_marks(self, positions, values) -> None:
        for p in positions:
            self.B.mark(p)
        self.tree.insert_many(zip(values, positions))

    # ---- refinement -----------------------------------------------------

    def _fits(self, lo: int, hi: int) -> bool:
        # the cache block stays resident, the rest of memory holds the interval
        return self.emap.block_count(lo, hi) <= self.store.m - 1

    def _refine(self, a: int, b: int) -> list[tuple[int, int]]:
        """Settle pivots inside the unmarked gap between marks ``a`` and ``b``.

        Returns the new ``(position, value)`` pivots in position order.
        """
        lo, hi = a + 1, b
        if self._fits(lo, hi):
            return self._solve_in_memory(lo, hi)
        return self._partition(lo, hi)

    def _solve_in_memory(self, lo: int, hi: int) -> list[tuple[int, int]]:
        store = self.store
        pieces = list(self.emap.pieces(lo, hi))
        bids = list(dict.fromkeys(p[0] for p in pieces))
        with store.hold(len(bids)):
            blocks = {bid: store.read(bid) for bid in bids}
            vals = np.ascontiguousarray(np.concatenate([blocks[b][i0:i1] for b, i0, i1, _ in pieces]))
            buf = np.empty_like(vals)
            self.ledger.charge("sort_cmp", kernels.merge_sort(vals, 0, len(vals), buf))
            k = 0
            for bid, i0, i1, _ in pieces:
                blocks[bid][i0:i1] = vals[k:k + i1 - i0]
                k += i1 - i0
            for bid in bids:
                store.write(bid, blocks[bid])
        if self._cache_bid in blocks:
            self._cache = blocks[self._cache_bid].copy()
        self.B.mark_range(lo, hi - 1)
        step = store.B
        # every B-th key plus the last, so each mark bounding a gap is in the tree
        keys = {(int(vals[t]), lo + t) for t in range(0, len(vals), step)}
        keys.add((int(vals[-1]), hi - 1))
        self.tree.insert_many(keys)
        store.note("solve")
        return [(lo + t, int(v)) for t, v in enumerate(vals)]

    def _partition(self, lo: int, hi: int) -> list[tuple[int, int]]:
        store = self.store
        size = hi - lo
        d = min(self.d, size, math.ceil(store.M / math.log2(max(size, 2))) - 1)
        with store.hold(1):  # the resident cache block
            samples, c = ms_sample(store, self.emap, lo, hi, d)
            self.ledger.charge("pivot_cmp", c)
            res = d_way_partition(store, self.emap, lo, hi, samples)
        self.ledger.charge("partition_cmp", res.comparisons)
        self.emap.replace(lo, hi, res.extents)
        pivots = [(p, int(v)) for p, v in zip(res.pivots, samples)]
        for p, _ in pivots:
            self.B.mark(p)
            self.strict[p] = 1
        self.tree.insert_many((v, p) for p, v in pivots)
        store.note("partition")
        out = list(pivots)
        # buckets made mostly of copies of their left sample are split once
        # more into an equal block (settled) and the strictly larger rest
        for j, ext in enumerate(res.extents):
            if j == 0 or ext.length <= 1:
                continue
            bucket = ext.length - 1
            if 2 * res.equal_left[j] >= bucket and not self._fits(ext.start + 1, ext.end):
                out.extend(self._settle_equal(ext.start + 1, ext.end, int(samples[j - 1])))
        out.sort()
        return out

    def _settle_equal(self, lo: int, hi: int, v: int) -> list[tuple[int, int]]:
        store = self.store
        B = store.B
        streams: list[list[np.ndarray]] = [[], []]
        fill = [0, 0]
        blocks: list[list[int]] = [[], []]
        sizes = [0, 0]
        cmps = 0

        def flush(j: int) -> None:
            if fill[j]:
                bid = store.alloc()
                store.write(bid, np.concatenate(streams[j]))
                blocks[j].append(bid)
                streams[j], fill[j] = [], 0

        with store.hold(4):
            for bid, i0, i1, _ in self.emap.pieces(lo, hi):
                piece = store.read(bid)[i0:i1]
                cmps += len(piece)
                eq = piece == v
                for j, part in ((0, piece[eq]), (1, piece[~eq])):
                    while len(part):
                        take = min(B - fill[j], len(part))
                        streams[j].append(part[:take])
                        fill[j] += take
                        sizes[j] += take
                        part = part[take:]
                        if fill[j] == B:
                            flush(j)
            flush(0)
            flush(1)
        self.ledger.charge("partition_cmp", cmps)
        mid = lo + sizes[0]
        self.emap.replace(lo, hi, [Extent(lo, sizes[0], blocks[0], 0), Extent(mid, sizes[1], blocks[1], 0)])
        if sizes[0] == 0:
            return []
        self.B.mark_range(lo, mid - 1)
        self.tree.insert_many({(v, lo), (v, mid - 1)})
        return [(lo, v), (mid - 1, v)]

    # ---- queries --------------------------------------------------------

    def select(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"rank {i} outside [1, {self.n}]")
        B = self.B
        while not B.is_marked(i):
            self._refine(B.prev_marked(i), B.next_marked(i))
        v = self.value_at(i)
        self.store.note("select")
        return v

    def locate(self, p: int) -> tuple[int, bool]:
        """``(number of keys < p, whether p occurs)``."""
        led = self.ledger
        led.charge("search_cmp", 1)
        if p <= self.min_val:
            led.charge("search_cmp", 1)
            return 0, bool(p == self.min_val)
        led.charge("search_cmp", 1)
        if p > self.max_val:
            return self.n, False
        pred, succ = self.tree.bracket(p)
        lo, hi, vhi = pred[1], succ[1], succ[0]
        cmps = 0
        while hi - lo > 1:
            if self.strict[hi]:
                # nothing equal to p can hide left of a strict pivot holding p
                cmps += 1
                if vhi == p:
                    lo = hi - 1
                    break
            bits = self.B._bits
            if bits.find(0, lo + 1, hi) < 0:
                vals = self.values_range(lo + 1, hi)
                k, c = kernels.lower_bound(vals, 0, len(vals), p)
                cmps += c
                if k < len(vals):
                    hi, vhi = lo + 1 + k, int(vals[k])
                lo = hi - 1
                break
            inner = bits.rfind(1, lo + 1, hi)
            if inner < 0:
                known = self._refine(lo, hi)
            else:
                known = [(inner, self.value_at(inner))]
            # first known pivot whose key is >= p
            left, right = 0, len(known)
            while left < right:
                mid = (left + right) // 2
                cmps += 1
                if known[mid][1] < p:
                    left = mid + 1
                else:
                    right = mid
            if left > 0:
                lo = known[left - 1][0]
            if left < len(known):
                hi, vhi = known[left]
        led.charge("search_cmp", cmps + 1)
        return lo, bool(vhi == p)

    def search(self, p: int) -> int:
        less, present = self.locate(p)
        self.store.note("search")
        return less + 1 if present else less

    def pivot_count(self) -> int:
        return self.B.count()
