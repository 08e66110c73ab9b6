"""Online multiselection by lazy quicksort.

The selector owns an array that it partially sorts while answering
queries.  Settled positions (pivots) are recorded in a MarkBitvector; a
set bit at ``i`` means everything left of ``i`` is ``<= A[i]`` and
everything right of it is ``>= A[i]``.  Positions are 1-based in the API.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .bitvec import MarkBitvector
from .core_model import ComparisonLedger, PivotSet
from .pivot_select import SamplePlan, exact_median, sample_median

POLICIES = ("last", "median", "random")


class _OnlineSelector:
    """Shared query logic; subclasses supply ``_split``."""

    def __init__(self, values, *, ledger: ComparisonLedger | None = None):
        a = np.array(values, dtype=np.int64).ravel()
        if a.size == 0:
            raise ValueError("cannot preprocess an empty array")
        self._setup(a, ledger)
        self._preprocess()

    @classmethod
    def _from_state(cls, a: np.ndarray, ledger: ComparisonLedger, **kw):
        # adopt an array without preprocessing (used by rebuilds); n may be 0
        obj = cls.__new__(cls)
        obj._configure(**kw)
        obj._setup(np.ascontiguousarray(a, dtype=np.int64), ledger)
        return obj

    def _configure(self, **kw) -> None:
        pass

    def _setup(self, a: np.ndarray, ledger) -> None:
        n = len(a)
        self.A = a
        self.n = n
        self.B = MarkBitvector(n)
        self.ledger = ledger if ledger is not None else ComparisonLedger()
        self.depth = np.full(n + 2, -1, dtype=np.int32)
        self.isize = np.zeros(n + 2, dtype=np.int64)
        self.parent = np.full(n + 2, -1, dtype=np.int64)

    def _preprocess(self) -> None:
        a, n = self.A, self.n
        imin, imax, cmps = kernels.minmax(a, 0, n)
        self.ledger.charge("partition_cmp", cmps)
        a[0], a[imin] = a[imin], a[0]
        if imax == 0:
            imax = imin
        a[n - 1], a[imax] = a[imax], a[n - 1]
        self.B.mark(1)
        self.B.mark(n)

    # ---- hooks used by the dynamic wrapper ------------------------------

    def value_at(self, pos: int) -> int:
        return int(self.A[pos - 1])

    def values_range(self, lo: int, hi: int) -> np.ndarray:
        return self.A[lo - 1:hi - 1]

    def adopt_marks(self, positions, values=None) -> None:
        for p in positions:
            self.B.mark(p)

    def ensure_ends(self) -> None:
        for end in (1, self.n):
            if not self.B.is_marked(end):
                self.select(end)

    # ---- interval bookkeeping -------------------------------------------

    def _interval_meta(self, a: int, b: int) -> tuple[int, int]:
        """Depth and parent pivot of the open interval between marks a < b."""
        da, db = self.depth[a], self.depth[b]
        if da < 0 and db < 0:
            return 0, -1
        return (int(da) + 1, a) if da >= db else (int(db) + 1, b)

    def _record(self, pos: int, d: int, size: int, parent: int) -> None:
        self.B.mark(pos)
        self.depth[pos] = d
        self.isize[pos] = size
        self.parent[pos] = parent

    def _record_range(self, lo: int, hi: int, d: int, size: int, parent: int) -> None:
        self.B.mark_range(lo, hi)
        self.depth[lo:hi + 1] = d
        self.isize[lo:hi + 1] = size
        self.parent[lo:hi + 1] = parent

    def _split(self, a: int, b: int) -> None:
        """Refine the unmarked interval strictly between marks ``a`` and ``b``."""
        raise NotImplementedError

    def partition(self, lo: int, hi: int, pivot: int) -> int:
        """Partition positions ``lo..hi`` around position ``pivot``.

        Keys equal to the pivot go left.  Returns the final pivot position,
        which is marked.  One comparison per non-pivot element.
        """
        if not lo <= pivot <= hi:
            raise ValueError("pivot outside interval")
        d, par = self._interval_meta(lo - 1, hi + 1) if lo > 1 and hi < self.n else (0, -1)
        pos, cmps = kernels.partition_le(self.A, lo - 1, hi, pivot - 1)
        self.ledger.charge("partition_cmp", cmps)
        self._record(pos + 1, d, hi - lo + 1, par)
        return pos + 1

    # ---- queries --------------------------------------------------------

    def _check_rank(self, s: int) -> None:
        if not 1 <= s <= self.n:
            raise ValueError(f"rank {s} outside [1, {self.n}]")

    def select(self, s: int) -> int:
        """Element of rank ``s`` (1-based)."""
        self._check_rank(s)
        B = self.B
        while not B.is_marked(s):
            self._split(B.prev_marked(s), B.next_marked(s))
        return int(self.A[s - 1])

    def locate(self, p: int) -> tuple[int, bool]:
        """``(number of elements < p, whether p occurs)``.

        Binary search over marked positions only; when the target lies in
        an unmarked gap the gap is refined by the pivot policy and the
        search resumes.  Comparisons against ``p`` go to ``search_cmp``.
        """
        if self.n == 0:
            return 0, False
        A, B, led = self.A, self.B, self.ledger
        n = self.n
        led.charge("search_cmp", 1)
        if p <= A[0]:
            led.charge("search_cmp", 1)
            return 0, bool(p == A[0])
        led.charge("search_cmp", 1)
        if p > A[n - 1]:
            return n, False
        # A[lo] < p <= A[hi] with lo, hi marked
        lo, hi = 1, n
        cmps = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if B.is_marked(mid):
                cmps += 1
                if p <= A[mid - 1]:
                    hi = mid
                else:
                    lo = mid
                continue
            ma, mb = B.prev_marked(mid), B.next_marked(mid)
            if ma == lo and mb == hi:
                led.charge("search_cmp", cmps)
                cmps = 0
                self._split(lo, hi)
                continue
            if ma > lo:
                cmps += 1
                if p <= A[ma - 1]:
                    hi = ma
                    continue
                lo = ma
            if mb < hi:
                cmps += 1
                if p <= A[mb - 1]:
                    hi = mb
                else:
                    lo = mb
        led.charge("search_cmp", cmps + 1)
        return lo, bool(A[hi - 1] == p)

    def search(self, p: int) -> int:
        """Rank of ``p`` if present (leftmost copy), else the count of smaller keys."""
        less, present = self.locate(p)
        return less + 1 if present else less

    def rank(self, p: int) -> int:
        return self.search(p)

    # ---- introspection --------------------------------------------------

    def pivot_records(self):
        for pos in self.B.positions():
            if self.isize[pos] > 0:
                yield pos, int(self.depth[pos]), int(self.isize[pos]), int(self.parent[pos])

    def pivot_set(self) -> PivotSet:
        return PivotSet(self.n, self.B.positions())

    def check_marks(self) -> bool:
        """Every mark separates smaller-or-equal keys from larger-or-equal keys."""
        a = self.A
        if self.n == 0:
            return True
        pre_max = np.maximum.accumulate(a)
        suf_min = np.minimum.accumulate(a[::-1])[::-1]
        for pos in self.B.positions():
            i = pos - 1
            if pre_max[i] > a[i] or suf_min[i] < a[i]:
                return False
        return True


class SimpleSelector(_OnlineSelector):
    """Lazy quickselect with a choice of pivot policy.

    ``median`` is deterministic (median of medians), ``last`` takes the
    interval's last element and ``random`` takes the median of a random
    sample (``faithful_plan=True`` for the full-size sample, falling back
    to the exact median whenever the plan does not fit the interval).
    """

    def __init__(self, values, policy: str = "median", *, rng=None, seed: int | None = None,
                 faithful_plan: bool = False, ledger: ComparisonLedger | None = None):
        self._configure(policy=policy, rng=rng, seed=seed, faithful_plan=faithful_plan)
        super().__init__(values, ledger=ledger)

    def _configure(self, policy: str = "median", rng=None, seed=None, faithful_plan: bool = False) -> None:
        if policy not in POLICIES:
            raise ValueError(f"unknown pivot policy {policy!r}")
        self.policy = policy
        self.rng = rng if rng is not None else np.random.default_rng(seed)
        self.faithful_plan = faithful_plan

    def _choose(self, lo: int, hi: int) -> int:
        # 0-based index of the pivot within a[lo:hi]
        if self.policy == "last":
            return hi - 1
        if self.policy == "random":
            size = hi - lo
            plan = SamplePlan.faithful(size, self.n) if self.faithful_plan else SamplePlan.scaled(size, self.n)
            if plan.valid:
                k, cmps = sample_median(self.A, lo, hi, self.rng, plan)
                self.ledger.charge("pivot_cmp", cmps)
                return k
        k, cmps = exact_median(self.A, lo, hi)
        self.ledger.charge("pivot_cmp", cmps)
        return k

    def _split(self, a: int, b: int) -> None:
        d, par = self._interval_meta(a, b)
        size = b - a - 1
        if size == 1:
            self._record(a + 1, d, 1, par)
            return
        k = self._choose(a, b - 1)
        pos, cmps = kernels.partition_le(self.A, a, b - 1, k)
        self.ledger.charge("partition_cmp", cmps)
        self._record(pos + 1, d, size, par)
