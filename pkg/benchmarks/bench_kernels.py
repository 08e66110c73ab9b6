"""Compiled vs pure-Python kernels: wall time and comparison counts.

Both backends must report identical comparison counts; only the time differs.
"""

import argparse
import time

import numpy as np

from lazysort.kernels import backends


def _cases(n: int, seed: int):
    rng = np.random.default_rng(seed)
    base = rng.integers(0, 1 << 40, n).astype(np.int64)

    def select(k):
        a = base.copy()
        return k.select_kth(a, 0, n, n // 2)

    def msort(k):
        a = base.copy()
        return k.merge_sort(a, 0, n, np.empty_like(a))

    def partition(k):
        a = base.copy()
        return k.partition_le(a, 0, n, n // 3)[1]

    def runs(k):
        a = base.copy()
        rs = np.ones(n, dtype=np.uint8)
        return k.sort_runs(a, rs, 0, n, np.empty_like(a))

    return {"select_kth": select, "merge_sort": msort, "partition_le": partition, "sort_runs": runs}


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1 << 15)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()
    ks = backends()
    print("kernel,backend,seconds,comparisons")
    for name, fn in _cases(args.n, args.seed).items():
        counts = {}
        for bname, mod in ks.items():
            t = time.perf_counter()
            counts[bname] = fn(mod)
            print(f"{name},{bname},{time.perf_counter() - t:.4f},{counts[bname]}")
        if len(set(counts.values())) != 1:
            raise SystemExit(f"{name}: backends disagree {counts}")


if __name__ == "__main__":
    main()
