"""Online multiselection under insertions and deletions.

Coordinates.  The *physical* sequence is every original element (deleted
ones included) in sorted order, with each live inserted element placed at
its sorted slot.  Two dynamic bitvectors run over it:

* ``I[x] = 1`` iff physical slot ``x`` holds an inserted element;
* ``D[x] = 1`` iff slot ``x`` holds a deleted original element.

Logical rank ``i`` is the ``i``-th zero of ``D``.  An original element at
slot ``x`` has base rank ``I.rank_0(x)`` and is fetched with
``base.select``; inserted elements live in ``T`` (a positional tree) in
slot order, so the ``k``-th one of ``I`` is ``T[k - 1]``.  Deleting an
inserted element removes its slot outright.

After as many updates as the base holds, everything is folded into a
fresh base array; settled positions carry over as pivots.
"""

from __future__ import annotations

import numpy as np

from ._seqtree import ValueSeq
from .bitvec import DynamicBitvector
from .core_model import ComparisonLedger
from .optimal_runs import OptimalSelector


class DynamicMultiselect:
    def __init__(self, values, *, base_cls=OptimalSelector, ledger: ComparisonLedger | None = None,
                 rebuild: bool = True, **base_kw):
        self.ledger = ledger if ledger is not None else ComparisonLedger()
        self.base_cls = base_cls
        self.base_kw = base_kw
        self.auto_rebuild = rebuild
        self.rebuilds = 0
        vals = np.array(values, dtype=np.int64).ravel()
        self.base = base_cls(vals, ledger=self.ledger, **base_kw) if vals.size else None
        self._reset_overlay()

    def _reset_overlay(self) -> None:
        n = self.base_n
        self.I = DynamicBitvector.zeros(n)
        self.D = DynamicBitvector.zeros(n)
        self.T = ValueSeq()
        self.update_count = 0

    @property
    def base_n(self) -> int:
        return self.base.n if self.base is not None else 0

    def __len__(self) -> int:
        return len(self.D) - self.D.count(1)

    # ---- helpers --------------------------------------------------------

    def _old_slot(self, r: int) -> int:
        # physical slot of base rank r (0 for r == 0, len + 1 past the end)
        if r == 0:
            return 0
        if r > self.base_n:
            return len(self.I) + 1
        return self.I.select(0, r)

    def _block(self, j: int) -> tuple[int, int, int]:
        """Slot of base rank ``j``, first T index after it, inserted count before rank ``j + 1``."""
        xj = self._old_slot(j)
        xn = self._old_slot(j + 1)
        t0 = self.I.rank(1, xj)
        return xj, t0, xn - xj - 1

    def _bisect(self, t0: int, count: int, a: int, right: bool) -> int:
        # binary search among T[t0:t0+count]; comparisons go to search_cmp
        lo, hi, cmps = 0, count, 0
        T = self.T
        while lo < hi:
            mid = (lo + hi) // 2
            cmps += 1
            v = T[t0 + mid]
            if v < a or (right and v == a):
                lo = mid + 1
            else:
                hi = mid
        self.ledger.charge("search_cmp", cmps)
        return lo

    def _base_locate(self, a: int) -> tuple[int, bool]:
        return self.base.locate(a) if self.base is not None else (0, False)

    def _check_rank(self, i: int) -> None:
        if not 1 <= i <= len(self):
            raise ValueError(f"rank {i} outside [1, {len(self)}]")

    # ---- operations -----------------------------------------------------

    def select(self, i: int) -> int:
        self._check_rank(i)
        x = self.D.select(0, i)
        if self.I.get(x):
            return self.T[self.I.rank(1, x) - 1]
        return self.base.select(self.I.rank(0, x))

    def search(self, a: int) -> int:
        """Logical rank of the leftmost ``a`` if present, else the count of smaller elements."""
        j, present_old = self._base_locate(a)
        xj, t0, count = self._block(j)
        k = self._bisect(t0, count, a, right=False)
        less = (j - self.D.rank(1, xj)) + t0 + k
        present = False
        if k < count:
            self.ledger.charge("search_cmp", 1)
            present = self.T[t0 + k] == a
        if not present and present_old:
            # original copies of a hold base ranks j+1, j+2, ...; find a live one
            r = j + 1
            while True:
                if not self.D.get(self._old_slot(r)):
                    present = True
                    break
                r += 1
                if r > self.base_n:
                    break
                self.ledger.charge("search_cmp", 1)
                if self.base.select(r) != a:
                    break
        return less + 1 if present else less

    def insert(self, a: int) -> None:
        a = int(a)
        j, _ = self._base_locate(a)
        xj, t0, count = self._block(j)
        k = self._bisect(t0, count, a, right=True)
        x = xj + k + 1
        self.T.insert(t0 + k, a)
        self.I.insert(x, 1)
        self.D.insert(x, 0)
        self._updated()

    def delete(self, i: int) -> int:
        """Remove the element of logical rank ``i``; returns nothing useful without a select.

        No element comparisons are made.  Returns the physical slot removed
        or flagged (for debugging).
        """
        self._check_rank(i)
        x = self.D.select(0, i)
        if self.I.get(x):
            self.T.pop(self.I.rank(1, x) - 1)
            self.I.delete(x)
            self.D.delete(x)
        else:
            self.D.flip(x)
        self._updated()
        return x

    def _updated(self) -> None:
        self.update_count += 1
        if self.auto_rebuild and self.update_count >= max(self.base_n, 1):
            self.rebuild()

    # ---- rebuild --------------------------------------------------------

    def rebuild(self) -> None:
        """Fold inserted elements into a new base and drop deleted ones.

        Deleted originals that sit inside unsettled gaps are first pinned by
        a base selection, so every removal happens at a known position.
        """
        base = self.base
        I_bits = self.I.tolist()
        D_bits = self.D.tolist()
        inserted = self.T.tolist()
        if base is not None:
            r = 0
            for ib, db in zip(I_bits, D_bits):
                if not ib:
                    r += 1
                    if db and not base.B.is_marked(r):
                        base.select(r)
        out, marked, mvals = [], [], []
        ti, r = 0, 0
        n_old = self.base_n
        for ib, db in zip(I_bits, D_bits):
            if ib:
                marked.append(len(out) + 1)
                mvals.append(inserted[ti])
                out.append(inserted[ti])
                ti += 1
                continue
            r += 1
            if db:
                continue
            if base.B.is_marked(r):
                v = base.value_at(r)
                marked.append(len(out) + 1)
                mvals.append(v)
                out.append(v)
            elif r == 1 or base.B.is_marked(r - 1):
                # inside an unsettled gap: the whole gap is copied when its first rank is met
                end = min(base.B.next_marked(r), n_old + 1)
                out.extend(base.values_range(r, end).tolist())
        if not out:
            self.base = None
        else:
            nb = self.base_cls._from_state(np.array(out, dtype=np.int64), self.ledger, **self._rebuild_kw())
            nb.adopt_marks(marked, mvals)
            nb.ensure_ends()
            self.base = nb
        self.rebuilds += 1
        self._reset_overlay()

    def _rebuild_kw(self) -> dict:
        return self.base_kw

    def tolist(self) -> list[int]:
        return [self.select(i) for i in range(1, len(self) + 1)]
