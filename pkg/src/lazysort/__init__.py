"""Online multiselection: answer rank and search queries on an unsorted
array while sorting only as much of it as the queries force."""

from .bitvec import DynamicBitvector, MarkBitvector
from .core_model import (ComparisonLedger, PivotSet, QuerySet, entropy_lower_bound, gap_vector,
                         io_lower_bound, log2_factorial)
from .dynamic_multiselect import DynamicMultiselect
from .kernels import BACKEND
from .optimal_runs import OptimalSelector
from .pivot_select import SamplePlan, binomial_tail_bound, exact_median, good_pivot_certificate, sample_median
from .quickselect_simple import SimpleSelector

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ComparisonLedger", "DynamicBitvector", "DynamicMultiselect", "MarkBitvector",
    "OptimalSelector", "PivotSet", "QuerySet", "SamplePlan", "SimpleSelector", "binomial_tail_bound",
    "entropy_lower_bound", "exact_median", "gap_vector", "good_pivot_certificate", "io_lower_bound",
    "log2_factorial", "sample_median",
]
