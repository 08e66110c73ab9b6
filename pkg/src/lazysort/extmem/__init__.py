"""External-memory multiselection on a simulated block device."""

from .blockstore import BlockStore, Extent, ExtentMap, MemoryBudgetError
from .btree import PivotBTree
from .dynamic import ExternalDynamic
from .mergesort import external_mergesort, mergesort_ios
from .partition import PartitionResult, d_way_partition, max_splitters
from .sampling import ms_sample, rank_window
from .selector import ExternalSelector

__all__ = [
    "BlockStore", "Extent", "ExtentMap", "MemoryBudgetError", "PivotBTree", "ExternalDynamic",
    "external_mergesort", "mergesort_ios", "PartitionResult", "d_way_partition", "max_splitters",
    "ms_sample", "rank_window", "ExternalSelector",
]
