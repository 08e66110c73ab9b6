"""Run-aware lazy quicksort whose comparison cost tracks the entropy bound.

Every unsettled interval is kept as a sequence of sorted runs (run starts
are flagged in ``rs``).  On each visit of an interval at depth ``d`` the
run-length target is ``ell = 1 + floor(log2(d + 1))``:

* intervals shorter than ``4 * ell**2`` are sorted outright by merging
  their runs and every position is settled;
* otherwise like-sized runs shorter than ``ell`` are merged pairwise, the
  pivot is the median of the run medians, and each run is split around it
  by binary search.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import kernels
from .quickselect_simple import _OnlineSelector


def run_length_target(depth: int) -> int:
    return (depth + 1).bit_length()


class OptimalSelector(_OnlineSelector):
    """Online multiselect using run merging and median-of-run-medians pivots."""

    def __init__(self, values, *, debug: bool = False, ledger=None):
        self._configure(debug=debug)
        super().__init__(values, ledger=ledger)

    def _configure(self, debug: bool = False) -> None:
        self.debug = debug

    def _setup(self, a, ledger) -> None:
        super()._setup(a, ledger)
        n = self.n
        self.rs = np.ones(n, dtype=np.uint8)
        self._buf = np.empty(n, dtype=np.int64)
        self._vals = np.empty(n, dtype=np.int64)
        self._idx = np.empty(n, dtype=np.int64)
        self._le = np.zeros(n, dtype=np.uint8)
        self.max_ell = 0
        self.log: list[dict] = []

    def _split(self, a: int, b: int) -> None:
        d, par = self._interval_meta(a, b)
        size = b - a - 1
        lo, hi = a, b - 1
        ell = run_length_target(d)
        self.max_ell = max(self.max_ell, ell)
        A, rs, led = self.A, self.rs, self.ledger
        if size < 4 * ell * ell:
            led.charge("sort_cmp", kernels.sort_runs(A, rs, lo, hi, self._buf))
            self._record_range(a + 1, b - 1, d, size, par)
            if self.debug:
                self._log(a, b, d, ell, None, "sort")
            return
        led.charge("merge_cmp", kernels.normalize_runs(A, rs, lo, hi, ell, self._buf))
        if self.debug:
            profile = self._run_profile(lo, hi)
        k = kernels.run_medians(A, rs, lo, hi, self._vals, self._idx)
        led.charge("pivot_cmp", kernels.select_kth(self._vals, 0, k, k // 2, self._idx))
        # run medians placed left of the pivot by the selection are known <= it
        known = self._idx[:k // 2]
        self._le[known] = 1
        pos, cmps = kernels.partition_runs(A, rs, lo, hi, int(self._idx[k // 2]), self._buf, self._le)
        self._le[known] = 0
        led.charge("partition_cmp", cmps)
        self._record(pos + 1, d, size, par)
        if self.debug:
            self._log(a, b, d, ell, pos + 1, "pivot", profile)

    # ---- diagnostics ----------------------------------------------------

    def _run_profile(self, lo: int, hi: int) -> list[int]:
        starts = np.flatnonzero(self.rs[lo:hi])
        return np.diff(np.append(starts, hi - lo)).tolist()

    def _log(self, a, b, d, ell, pivot, kind, profile=None) -> None:
        self.log.append({"kind": kind, "lo": a + 1, "hi": b - 1, "depth": d, "ell": ell,
                         "pivot": pivot, "runs": profile})

    def dump_pivot_tree(self, fh) -> None:
        """Write the recorded interval visits as JSON lines (needs ``debug``)."""
        for rec in self.log:
            fh.write(json.dumps(rec) + "\n")

    def gap_run_lengths(self) -> list[list[int]]:
        """Run lengths of every unsettled gap between consecutive marks."""
        marks = self.B.positions()
        out = []
        for a, b in zip(marks, marks[1:]):
            if b - a > 1:
                out.append(self._run_profile(a, b - 1))
        return out

    def run_entropy(self) -> float:
        """Sum of ``r * log2(r)`` over the runs of all unsettled gaps."""
        return sum(r * math.log2(r) for gap in self.gap_run_lengths() for r in gap if r > 1)
