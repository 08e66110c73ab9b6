"""Insertions and deletions on top of the external selector."""

from __future__ import annotations

from ..dynamic_multiselect import DynamicMultiselect
from .blockstore import BlockStore
from .selector import ExternalSelector


class ExternalDynamic(DynamicMultiselect):
    """Dynamic multiselection whose base array lives on the simulated disk.

    The overlay bitvectors and the inserted-key tree are memory resident;
    rebuilds reuse the same block store so I/O counts accumulate.
    """

    def __init__(self, values, B: int = 64, M: int = 4096, *, d: int | None = None,
                 ledger=None, rebuild: bool = True, trace: bool = False):
        self.store = BlockStore(B, M, trace=trace)
        super().__init__(values, base_cls=ExternalSelector, ledger=ledger, rebuild=rebuild,
                         B=B, M=M, d=d, store=self.store)
