"""Pure-Python comparison kernels.

Reference implementation of every hot loop.  The compiled module
``lazysort._kernels`` mirrors these functions one for one and must return
identical comparison counts; the test suite checks that.

Conventions shared by both backends:

* ranges are half-open ``[lo, hi)`` and 0-based;
* keys live in a contiguous ``int64`` numpy array;
* every element comparison is tallied and the tally is returned to the
  caller, who charges it to a ledger phase.
"""

import math

import numpy as np

SMALL_SELECT = 8
FR_MIN = 100
FR_MISSES = 2


def _swap(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap2(a, tags, i, j):
    a[i], a[j] = a[j], a[i]
    if tags is not None:
        tags[i], tags[j] = tags[j], tags[i]


def minmax(a, lo, hi):
    """Positions of a minimum and a maximum of ``a[lo:hi]`` by pairing.

    Uses at most ``3 * ceil(len / 2)`` comparisons.
    """
    n = hi - lo
    if n <= 0:
        raise ValueError("empty range")
    cmps = 0
    if n % 2:
        imin = imax = lo
        i = lo + 1
    else:
        cmps += 1
        if a[lo + 1] < a[lo]:
            imin, imax = lo + 1, lo
        else:
            imin, imax = lo, lo + 1
        i = lo + 2
    while i < hi:
        x, y = i, i + 1
        cmps += 1
        if a[y] < a[x]:
            x, y = y, x
        cmps += 1
        if a[x] < a[imin]:
            imin = x
        cmps += 1
        if a[y] > a[imax]:
            imax = y
        i += 2
    return imin, imax, cmps


def partition_le(a, lo, hi, p):
    """Lomuto partition of ``a[lo:hi]`` around the element at ``p``.

    Elements ``<=`` the pivot end up left of it.  Exactly one comparison per
    non-pivot element.  Returns ``(pivot_position, comparisons)``.
    """
    last = hi - 1
    _swap(a, p, last)
    v = a[last]
    store = lo
    for i in range(lo, last):
        if a[i] <= v:
            a[i], a[store] = a[store], a[i]
            store += 1
    _swap(a, store, last)
    return store, hi - lo - 1


def upper_bound(a, lo, hi, v):
    """First index in sorted ``a[lo:hi]`` holding a key ``> v``."""
    cmps = 0
    while lo < hi:
        mid = (lo + hi) >> 1
        cmps += 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo, cmps


def lower_bound(a, lo, hi, v):
    """First index in sorted ``a[lo:hi]`` holding a key ``>= v``."""
    cmps = 0
    while lo < hi:
        mid = (lo + hi) >> 1
        cmps += 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo, cmps


def insertion_sort(a, lo, hi, tags=None):
    """Stable binary insertion sort; about ``log2(i)`` comparisons per step."""
    cmps = 0
    for i in range(lo + 1, hi):
        x = a[i]
        t = tags[i] if tags is not None else 0
        left, right = lo, i
        while left < right:
            mid = (left + right) >> 1
            cmps += 1
            if a[mid] <= x:
                left = mid + 1
            else:
                right = mid
        j = i
        while j > left:
            a[j] = a[j - 1]
            if tags is not None:
                tags[j] = tags[j - 1]
            j -= 1
        a[left] = x
        if tags is not None:
            tags[left] = t
    return cmps


def _arrange5(a, tags, i):
    # six comparisons; leaves a[i:i+5] as [small, small, median, large, large]
    i0, i1, i2, i3, i4 = i, i + 1, i + 2, i + 3, i + 4
    if a[i0] > a[i1]:
        i0, i1 = i1, i0
    if a[i2] > a[i3]:
        i2, i3 = i3, i2
    if a[i0] > a[i2]:
        i0, i2 = i2, i0
        i1, i3 = i3, i1
    s0 = i0
    i0 = i4
    if a[i0] > a[i1]:
        i0, i1 = i1, i0
    if a[i0] > a[i2]:
        i0, i2 = i2, i0
        i1, i3 = i3, i1
    s1 = i0
    if a[i1] > a[i2]:
        m, l0, l1 = i2, i1, i3
    else:
        m, l0, l1 = i1, i2, i3
    order = (s0, s1, m, l0, l1)
    vals = [a[x] for x in order]
    a[i:i + 5] = vals
    if tags is not None:
        tv = [tags[x] for x in order]
        tags[i:i + 5] = tv


def _icbrt(n):
    c = 1
    while (c + 1) ** 3 <= n:
        c += 1
    return c


def _fr_step(a, lo, hi, k, tags, W, TW, w0):
    """Two-pivot step around a strided sample; returns ``(cmps, lo, hi)``."""
    n = hi - lo
    c = _icbrt(n)
    s = c * c
    for j in range(s):
        W[w0 + j] = a[lo + (2 * j + 1) * n // (2 * s)]
    g = math.isqrt(s * n.bit_length()) // 4
    ks = (k - lo) * s // n
    k1, k2 = max(0, ks - g), min(s - 1, ks + g)
    cmps = _select(W, w0, w0 + s, w0 + k1, None, W, TW, w0 + s)
    v1 = W[w0 + k1]
    if k2 > k1:
        cmps += _select(W, w0 + k1 + 1, w0 + s, w0 + k2, None, W, TW, w0 + s)
    v2 = W[w0 + k2]
    left, right, mid = w0, w0 + n - 1, lo
    low_first = 2 * (k - lo) >= n
    for y in range(lo, hi):
        x = a[y]
        if low_first:
            cmps += 1
            if x < v1:
                side = 0
            else:
                cmps += 1
                side = 2 if x > v2 else 1
        else:
            cmps += 1
            if x > v2:
                side = 2
            else:
                cmps += 1
                side = 0 if x < v1 else 1
        if side == 0:
            W[left] = x
            if tags is not None:
                TW[left] = tags[y]
            left += 1
        elif side == 2:
            W[right] = x
            if tags is not None:
                TW[right] = tags[y]
            right -= 1
        else:
            a[mid] = x
            if tags is not None:
                tags[mid] = tags[y]
            mid += 1
    L, M = left - w0, mid - lo
    # slide the middle block right, then copy the outer blocks in
    for y in range(M - 1, -1, -1):
        a[lo + L + y] = a[lo + y]
        if tags is not None:
            tags[lo + L + y] = tags[lo + y]
    for y in range(L):
        a[lo + y] = W[w0 + y]
        if tags is not None:
            tags[lo + y] = TW[w0 + y]
    for y in range(lo + L + M, hi):
        a[y] = W[w0 + n - 1 - (y - lo - L - M)]
        if tags is not None:
            tags[y] = TW[w0 + n - 1 - (y - lo - L - M)]
    if k < lo + L:
        return cmps, lo, lo + L
    if k >= lo + L + M:
        return cmps, lo + L + M, hi
    if v1 == v2:
        return cmps, k, k + 1  # the middle block is all one key
    return cmps, lo + L, lo + L + M


def _select(a, lo, hi, k, tags, W, TW, w0):
    cmps = 0
    misses = 0
    while True:
        n = hi - lo
        if n <= SMALL_SELECT:
            return cmps + insertion_sort(a, lo, hi, tags)
        if misses < FR_MISSES and n >= FR_MIN:
            c, lo, hi = _fr_step(a, lo, hi, k, tags, W, TW, w0)
            cmps += c
            # after repeated misses fall back to groups of five for good
            misses += 2 * (hi - lo) > n
            continue
        g = n // 5
        base = w0 + n
        for j in range(g):
            _arrange5(a, tags, lo + 5 * j)
            W[base + j] = a[lo + 5 * j + 2]
            TW[base + j] = j
        cmps += 6 * g
        mid = (g - 1) // 2
        cmps += _select(W, base, base + g, base + mid, TW, W, TW, base + g)
        v = W[base + mid]
        left = w0
        right = w0 + n - 1
        for x in range(g):
            s = lo + 5 * TW[base + x]
            if x < mid:
                for y in (s, s + 1, s + 2):
                    W[left] = a[y]
                    if tags is not None:
                        TW[left] = tags[y]
                    left += 1
                probe = (s + 3, s + 4)
            elif x > mid:
                for y in (s + 2, s + 3, s + 4):
                    W[right] = a[y]
                    if tags is not None:
                        TW[right] = tags[y]
                    right -= 1
                probe = (s, s + 1)
            else:
                for y in (s, s + 1):
                    W[left] = a[y]
                    if tags is not None:
                        TW[left] = tags[y]
                    left += 1
                for y in (s + 3, s + 4):
                    W[right] = a[y]
                    if tags is not None:
                        TW[right] = tags[y]
                    right -= 1
                pt = tags[s + 2] if tags is not None else 0
                probe = ()
            for y in probe:
                cmps += 1
                if a[y] < v or (x < mid and a[y] == v):
                    W[left] = a[y]
                    if tags is not None:
                        TW[left] = tags[y]
                    left += 1
                else:
                    W[right] = a[y]
                    if tags is not None:
                        TW[right] = tags[y]
                    right -= 1
        for y in range(lo + 5 * g, hi):
            cmps += 1
            if a[y] <= v:
                W[left] = a[y]
                if tags is not None:
                    TW[left] = tags[y]
                left += 1
            else:
                W[right] = a[y]
                if tags is not None:
                    TW[right] = tags[y]
                right -= 1
        W[left] = v
        if tags is not None:
            TW[left] = pt
        a[lo:hi] = W[w0:w0 + n]
        if tags is not None:
            tags[lo:hi] = TW[w0:w0 + n]
        p = lo + left - w0
        if k == p:
            return cmps
        if k < p:
            hi = p
        else:
            lo = p + 1


def select_kth(a, lo, hi, k, tags=None):
    """Rearrange ``a[lo:hi]`` so ``a[k]`` holds its order statistic.

    Ranges of at least ``FR_MIN`` keys first try a two-pivot step: the
    pivots bracket rank ``k`` within a strided sample of about ``n^(2/3)``
    keys, and one pass splits the range three ways, costing about ``1.5n``
    comparisons when the bracket holds.  After ``FR_MISSES`` brackets miss,
    the call switches to deterministic median of medians over groups of
    five, which keeps the worst case linear.  Each group is
    arranged around its median with six comparisons; once the median of
    medians ``v`` is known, three members of every group are already on a
    known side of ``v``, so partitioning costs two comparisons per group.
    Afterwards keys left of ``k`` are ``<= a[k]`` and keys right of it are
    ``>=``.  ``tags`` (optional) is permuted alongside ``a``.  Returns the
    comparison count.
    """
    if not lo <= k < hi:
        raise ValueError("k outside range")
    n = hi - lo
    W = np.empty(2 * n + 16, dtype=np.int64)
    TW = np.empty(2 * n + 16, dtype=np.int64)
    return _select(a, lo, hi, k, tags, W, TW, 0)


def merge(a, lo, mid, hi, buf, tags=None, tbuf=None):
    """Stable merge of sorted ``a[lo:mid]`` and ``a[mid:hi]`` in place."""
    if lo >= mid or mid >= hi:
        return 0
    cmps = 0
    i, j, w = lo, mid, 0
    while i < mid and j < hi:
        cmps += 1
        if a[j] < a[i]:
            buf[w] = a[j]
            if tags is not None:
                tbuf[w] = tags[j]
            j += 1
        else:
            buf[w] = a[i]
            if tags is not None:
                tbuf[w] = tags[i]
            i += 1
        w += 1
    while i < mid:
        buf[w] = a[i]
        if tags is not None:
            tbuf[w] = tags[i]
        i += 1
        w += 1
    # the tail a[j:hi] is already in place
    for x in range(w):
        a[lo + x] = buf[x]
        if tags is not None:
            tags[lo + x] = tbuf[x]
    return cmps


def merge_sort(a, lo, hi, buf, tags=None, tbuf=None):
    """Bottom-up merge sort of ``a[lo:hi]``; returns the comparison count."""
    cmps = 0
    width = 1
    n = hi - lo
    while width < n:
        s = lo
        while s + width < hi:
            e = min(s + 2 * width, hi)
            cmps += merge(a, s, s + width, e, buf, tags, tbuf)
            s = e
        width *= 2
    return cmps


def _runs(rs, lo, hi):
    starts = [i for i in range(lo, hi) if rs[i]]
    if not starts or starts[0] != lo:
        raise ValueError("interval does not begin a run")
    ends = starts[1:] + [hi]
    return list(zip(starts, ends))


def normalize_runs(a, rs, lo, hi, ell, buf):
    """Merge like-sized short runs until at most one of each length < ell.

    Lengths are processed in increasing order; at each length the two
    leftmost runs pair up first.  A merged run takes the slot of the right
    partner; an unpaired leftover is appended after all other runs.
    """
    cmps = 0
    length = 1
    while length < ell:
        runs = _runs(rs, lo, hi)
        same = [r for r in runs if r[1] - r[0] == length]
        if len(same) >= 2:
            w = lo
            pending = None
            for s, e in runs:
                if e - s != length:
                    buf[w - lo:w - lo + e - s] = a[s:e]
                    w += e - s
                    continue
                if pending is None:
                    pending = s
                    continue
                cmps += _merge_into(a, pending, pending + length, s, e, buf, w - lo)
                w += 2 * length
                pending = None
            if pending is not None:
                buf[w - lo:w - lo + length] = a[pending:pending + length]
            a[lo:hi] = buf[0:hi - lo]
            _restart(rs, lo, hi, runs, length)
        length += 1
    return cmps


def _merge_into(a, i, iend, j, jend, buf, k):
    cmps = 0
    while i < iend and j < jend:
        cmps += 1
        if a[j] < a[i]:
            buf[k] = a[j]
            j += 1
        else:
            buf[k] = a[i]
            i += 1
        k += 1
    while i < iend:
        buf[k] = a[i]
        i += 1
        k += 1
    while j < jend:
        buf[k] = a[j]
        j += 1
        k += 1
    return cmps


def _restart(rs, lo, hi, runs, length):
    # run starts after one normalization level, in emission order
    for x in range(lo, hi):
        rs[x] = 0
    w = lo
    pending = False
    for s, e in runs:
        ln = e - s
        if ln != length:
            rs[w] = 1
            w += ln
        elif not pending:
            pending = True
        else:
            rs[w] = 1
            w += 2 * length
            pending = False
    if pending:
        rs[w] = 1


def run_medians(a, rs, lo, hi, vals, idx):
    """Upper-middle element of every run; returns the number of runs."""
    k = 0
    start = lo
    for x in range(lo + 1, hi + 1):
        if x == hi or rs[x]:
            m = start + (x - start) // 2
            vals[k] = a[m]
            idx[k] = m
            k += 1
            start = x
    return k


def partition_runs(a, rs, lo, hi, p, buf, le=None):
    """Split every run of ``a[lo:hi]`` around the pivot at ``p``.

    Each run is cut by one binary search (keys ``<=`` pivot go left).  If
    ``le`` flags a run's middle element as already known to be ``<=`` the
    pivot, the search skips the lower half of that run.  The
    new layout is: left pieces in run order, the pivot, right pieces in run
    order; every nonempty piece starts a run.  Returns
    ``(pivot_position, comparisons)``.
    """
    v = a[p]
    cmps = 0
    runs = _runs(rs, lo, hi)
    cuts = []
    nleft = 0
    for s, e in runs:
        if s <= p < e:
            u, c = upper_bound(a, p + 1, e, v)
        elif le is not None and le[s + (e - s) // 2]:
            u, c = upper_bound(a, s + (e - s) // 2 + 1, e, v)
        else:
            u, c = upper_bound(a, s, e, v)
        cmps += c
        cuts.append(u)
        nleft += u - s
    nleft -= 1  # the pivot itself sits in a left piece
    for x in range(lo, hi):
        rs[x] = 0
    w = 0
    for (s, e), u in zip(runs, cuts):
        if s <= p < e:
            if p > s:
                buf[w:w + p - s] = a[s:p]
                rs[lo + w] = 1
                w += p - s
                if u > p + 1:
                    buf[w:w + u - p - 1] = a[p + 1:u]
                    w += u - p - 1
            elif u > p + 1:
                buf[w:w + u - p - 1] = a[p + 1:u]
                rs[lo + w] = 1
                w += u - p - 1
        elif u > s:
            buf[w:w + u - s] = a[s:u]
            rs[lo + w] = 1
            w += u - s
    pos = lo + w
    buf[w] = v
    rs[pos] = 1
    w += 1
    for (s, e), u in zip(runs, cuts):
        if e > u:
            buf[w:w + e - u] = a[u:e]
            rs[lo + w] = 1
            w += e - u
    a[lo:hi] = buf[0:hi - lo]
    return pos, cmps


def sort_runs(a, rs, lo, hi, buf):
    """Merge all runs of ``a[lo:hi]`` pairwise until one sorted run remains."""
    cmps = 0
    bounds = [s for s, _ in _runs(rs, lo, hi)] + [hi]
    while len(bounds) > 2:
        nb = [bounds[0]]
        i = 0
        while i + 2 < len(bounds):
            cmps += merge(a, bounds[i], bounds[i + 1], bounds[i + 2], buf)
            nb.append(bounds[i + 2])
            i += 2
        if i + 1 < len(bounds) and nb[-1] != bounds[-1]:
            nb.append(bounds[-1])
        bounds = nb
    for x in range(lo + 1, hi):
        rs[x] = 0
    return cmps


def distribute(a, lo, hi, samples, claimed, out):
    """Bucket ids for a d-way split of ``a[lo:hi]`` by sorted ``samples``.

    ``out[i - lo]`` receives the number of samples ``<= a[i]`` (keys
    strictly less than a sample fall left of it).  The first occurrence of
    each sample value that is not yet claimed is tagged ``-(k + 1)`` instead,
    so sample ``k`` can be placed as a pivot between buckets.  Other keys
    equal to the sample just left of their bucket get ``b + d + 1``.
    """
    d = len(samples)
    cmps = 0
    for i in range(lo, hi):
        x = a[i]
        left, right = 0, d
        while left < right:
            mid = (left + right) >> 1
            cmps += 1
            if samples[mid] <= x:
                left = mid + 1
            else:
                right = mid
        b = left
        if b > 0:
            cmps += 1
            if samples[b - 1] == x:
                k = b - 1
                while claimed[k]:
                    if k == 0:
                        k = -1
                        break
                    cmps += 1
                    if samples[k - 1] == x:
                        k -= 1
                    else:
                        k = -1
                        break
                if k >= 0:
                    claimed[k] = 1
                    out[i - lo] = -(k + 1)
                    continue
                out[i - lo] = b + d + 1
                continue
        out[i - lo] = b
    return cmps
