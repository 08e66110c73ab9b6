"""Pivot policies and the pivot-quality certificate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels


def exact_median(a: np.ndarray, lo: int, hi: int) -> tuple[int, int]:
    """Move the lower median of ``a[lo:hi]`` into place.

    The element of rank ``ceil(len / 2)`` ends at index
    ``lo + (len - 1) // 2``.  Returns ``(index, comparisons)``.
    """
    if hi <= lo:
        raise ValueError("empty interval")
    k = lo + (hi - lo - 1) // 2
    return k, kernels.select_kth(a, lo, hi, k)


@dataclass(frozen=True)
class SamplePlan:
    """Sample size ``2m`` and slack ``t`` for a random pivot of an interval.

    ``faithful`` uses ``m = 6 log^3 n log^2 D`` and ``t = 4 log^2 n log D``
    (logs base 2); these are far beyond practical sizes, so ``scaled``
    plans with smaller ``m`` are what the selectors use by default.
    """

    delta: int
    n: int
    m: int
    t: int

    @classmethod
    def faithful(cls, delta: int, n: int) -> SamplePlan:
        ln, ld = math.log2(max(n, 2)), math.log2(max(delta, 2))
        return cls(delta, n, math.ceil(6 * ln**3 * ld**2), math.ceil(4 * ln**2 * ld))

    @classmethod
    def scaled(cls, delta: int, n: int, m: int | None = None, t: int | None = None) -> SamplePlan:
        ld = math.log2(max(delta, 2))
        if m is None:
            m = math.ceil(ld * ld)
        if t is None:
            t = max(0, min(m - 1, math.ceil(math.sqrt(m * ld))))
        return cls(delta, n, m, t)

    @property
    def valid(self) -> bool:
        return 1 <= self.m < self.delta


def sample_median(a: np.ndarray, lo: int, hi: int, rng: np.random.Generator,
                  plan: SamplePlan) -> tuple[int, int]:
    """Median of ``2m`` uniform draws (with replacement) from ``a[lo:hi]``.

    Returns ``(index into a, comparisons)``; the index holds a sampled copy
    of the returned value, so the caller can partition around it.
    """
    if not plan.valid or plan.delta != hi - lo:
        raise ValueError("sample plan not valid for this interval")
    idx = rng.integers(lo, hi, size=2 * plan.m, dtype=np.int64)
    vals = np.ascontiguousarray(a[idx])
    k = (2 * plan.m - 1) // 2
    cmps = kernels.select_kth(vals, 0, len(vals), k, idx)
    return int(idx[k]), cmps


def binomial_tail_bound(m: int, t: int) -> float:
    """Upper bound ``2^(2m-1) * exp(-t^2 / (m + t))`` on ``sum_{i<m-t} C(2m, i)``."""
    if not 0 <= t < m:
        raise ValueError("need 0 <= t < m")
    return math.ldexp(math.exp(-t * t / (m + t)), 2 * m - 1)


@dataclass
class CertificateReport:
    c: float
    worst_ratio: float
    worst_pair: tuple[int, int] | None
    pairs: int

    def holds(self, bound: float = 1.0) -> bool:
        return self.worst_ratio <= bound


def good_pivot_certificate(selector, c: float) -> CertificateReport:
    """Largest ``|I(q)| / (|I(p)| * c^(d(q) - d(p)))`` over ancestor pairs.

    ``selector`` exposes ``pivot_records()`` yielding
    ``(position, depth, interval_size, parent_position)`` with parent ``-1``
    at the root.  Pairs are ranked in log space; the winner is then
    recomputed exactly so that a ratio of exactly 1 reports as 1.
    """
    recs = {pos: (d, size, par) for pos, d, size, par in selector.pivot_records()}
    logc = math.log(c)
    worst, pair, count = -math.inf, None, 0
    for pos, (d, size, par) in recs.items():
        while par >= 0:
            pd, psize, ppar = recs[par]
            r = math.log(size) - math.log(psize) - (d - pd) * logc
            count += 1
            if r > worst:
                worst, pair = r, (par, pos)
            par = ppar
    if pair is None:
        return CertificateReport(c, 0.0, None, 0)
    (pd, psize, _), (d, size, _) = recs[pair[0]], recs[pair[1]]
    exact = Fraction(size, psize) / Fraction(c).limit_denominator(1 << 20) ** (d - pd)
    return CertificateReport(c, float(exact), pair, count)
