"""Chunk-capacity sweep for DynamicBitvector (mixed random ops)."""

import argparse
import random
import statistics
import time

from lazysort.bitvec import DynamicBitvector


def run(cap: int, n: int, ops: int, seed: int) -> float:
    rng = random.Random(seed)
    v = DynamicBitvector.zeros(n, cap=cap)
    start = time.perf_counter()
    for _ in range(ops):
        r = rng.random()
        size = len(v)
        if r < 0.3:
            v.insert(rng.randint(1, size + 1), rng.getrandbits(1))
        elif r < 0.5 and size > 1:
            v.delete(rng.randint(1, size))
        elif r < 0.7:
            v.rank(1, rng.randint(0, size))
        elif r < 0.85 and v.count(1):
            v.select(1, rng.randint(1, v.count(1)))
        elif size:
            v.flip(rng.randint(1, size))
    return (time.perf_counter() - start) / ops * 1e6


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1 << 17)
    ap.add_argument("--ops", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3, help="report the median of this many runs")
    args = ap.parse_args()
    print("cap,us_per_op")
    for cap in (64, 128, 256, 512, 1024, 2048, 4096):
        t = statistics.median(run(cap, args.n, args.ops, args.seed + r) for r in range(args.repeat))
        print(f"{cap},{t:.2f}")


if __name__ == "__main__":
    main()
