"""Backend selection for the comparison kernels.

The compiled extension is used when it imports; otherwise the pure-Python
reference runs.  ``LAZYSORT_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("LAZYSORT_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py
        BACKEND = "python"

minmax = _impl.minmax
partition_le = _impl.partition_le
upper_bound = _impl.upper_bound
lower_bound = _impl.lower_bound
insertion_sort = _impl.insertion_sort
select_kth = _impl.select_kth
merge = _impl.merge
merge_sort = _impl.merge_sort
normalize_runs = _impl.normalize_runs
run_medians = _impl.run_medians
partition_runs = _impl.partition_runs
sort_runs = _impl.sort_runs
distribute = _impl.distribute


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["compiled"] = _kernels
    except ImportError:  # pragma: no cover
        pass
    return out
