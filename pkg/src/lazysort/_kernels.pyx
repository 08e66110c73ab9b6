# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled comparison kernels.

Line-for-line mirror of ``lazysort._kernels_py``; both must report the same
comparison counts for the same input.
"""

from libc.math cimport sqrt

import numpy as np

ctypedef long long i64
ctypedef unsigned char u8

cdef Py_ssize_t SMALL_SELECT = 8
cdef Py_ssize_t FR_MIN = 100
cdef int FR_MISSES = 2


cdef inline void _swap2(i64[::1] a, i64[::1] tags, bint has_tags,
                        Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef i64 t = a[i]
    a[i] = a[j]
    a[j] = t
    if has_tags:
        t = tags[i]
        tags[i] = tags[j]
        tags[j] = t


def minmax(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = hi - lo, i, x, y, imin, imax, t
    cdef i64 cmps = 0
    if n <= 0:
        raise ValueError("empty range")
    if n % 2:
        imin = lo
        imax = lo
        i = lo + 1
    else:
        cmps += 1
        if a[lo + 1] < a[lo]:
            imin = lo + 1
            imax = lo
        else:
            imin = lo
            imax = lo + 1
        i = lo + 2
    while i < hi:
        x = i
        y = i + 1
        cmps += 1
        if a[y] < a[x]:
            t = x
            x = y
            y = t
        cmps += 1
        if a[x] < a[imin]:
            imin = x
        cmps += 1
        if a[y] > a[imax]:
            imax = y
        i += 2
    return imin, imax, cmps


def partition_le(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t p):
    cdef Py_ssize_t last = hi - 1, store = lo, i
    cdef i64 v, t
    with nogil:
        t = a[p]
        a[p] = a[last]
        a[last] = t
        v = a[last]
        for i in range(lo, last):
            if a[i] <= v:
                t = a[i]
                a[i] = a[store]
                a[store] = t
                store += 1
        t = a[store]
        a[store] = a[last]
        a[last] = t
    return store, hi - lo - 1


cdef inline Py_ssize_t _upper(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, i64 v,
                              i64* cmps) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        cmps[0] += 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


def upper_bound(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, i64 v):
    cdef i64 cmps = 0
    cdef Py_ssize_t r = _upper(a, lo, hi, v, &cmps)
    return r, cmps


def lower_bound(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, i64 v):
    cdef i64 cmps = 0
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        cmps += 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo, cmps


cdef i64 _insertion_sort(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi,
                         i64[::1] tags, bint has_tags) noexcept nogil:
    cdef i64 cmps = 0, x, t = 0
    cdef Py_ssize_t i, j, left, right, mid
    for i in range(lo + 1, hi):
        x = a[i]
        if has_tags:
            t = tags[i]
        left = lo
        right = i
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
            if has_tags:
                tags[j] = tags[j - 1]
            j -= 1
        a[left] = x
        if has_tags:
            tags[left] = t
    return cmps


def insertion_sort(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, i64[::1] tags=None):
    cdef bint has_tags = tags is not None
    cdef i64 r
    with nogil:
        r = _insertion_sort(a, lo, hi, tags, has_tags)
    return r


cdef inline void _arrange5(i64[::1] a, i64[::1] tags, bint has_tags, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t i0 = i, i1 = i + 1, i2 = i + 2, i3 = i + 3, i4 = i + 4, t
    cdef Py_ssize_t s0, s1, m, l0, l1, x
    cdef Py_ssize_t order[5]
    cdef i64 vals[5]
    cdef i64 tv[5]
    if a[i0] > a[i1]:
        t = i0; i0 = i1; i1 = t
    if a[i2] > a[i3]:
        t = i2; i2 = i3; i3 = t
    if a[i0] > a[i2]:
        t = i0; i0 = i2; i2 = t
        t = i1; i1 = i3; i3 = t
    s0 = i0
    i0 = i4
    if a[i0] > a[i1]:
        t = i0; i0 = i1; i1 = t
    if a[i0] > a[i2]:
        t = i0; i0 = i2; i2 = t
        t = i1; i1 = i3; i3 = t
    s1 = i0
    if a[i1] > a[i2]:
        m = i2; l0 = i1; l1 = i3
    else:
        m = i1; l0 = i2; l1 = i3
    order[0] = s0; order[1] = s1; order[2] = m; order[3] = l0; order[4] = l1
    for x in range(5):
        vals[x] = a[order[x]]
        if has_tags:
            tv[x] = tags[order[x]]
    for x in range(5):
        a[i + x] = vals[x]
        if has_tags:
            tags[i + x] = tv[x]


cdef inline void _put(i64[::1] a, i64[::1] tags, bint has_tags, i64[::1] W, i64[::1] TW,
                      Py_ssize_t src, Py_ssize_t dst) noexcept nogil:
    W[dst] = a[src]
    if has_tags:
        TW[dst] = tags[src]


cdef inline Py_ssize_t _icbrt(Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t c = 1
    while (c + 1) * (c + 1) * (c + 1) <= n:
        c += 1
    return c


cdef inline Py_ssize_t _isqrt(Py_ssize_t x) noexcept nogil:
    cdef Py_ssize_t r = <Py_ssize_t>sqrt(<double>x)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


cdef inline Py_ssize_t _bitlen(Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t b = 0
    while n:
        b += 1
        n >>= 1
    return b


cdef i64 _fr_step(i64[::1] a, Py_ssize_t* plo, Py_ssize_t* phi, Py_ssize_t k,
                  i64[::1] tags, bint has_tags, i64[::1] W, i64[::1] TW,
                  Py_ssize_t w0) noexcept nogil:
    cdef Py_ssize_t lo = plo[0], hi = phi[0], n = hi - lo
    cdef Py_ssize_t c = _icbrt(n), s, j, g, ks, k1, k2, left, right, mid, y, L, M
    cdef i64 cmps, v1, v2, x
    cdef int side
    cdef bint low_first
    s = c * c
    for j in range(s):
        W[w0 + j] = a[lo + (2 * j + 1) * n // (2 * s)]
    g = _isqrt(s * _bitlen(n)) // 4
    ks = (k - lo) * s // n
    k1 = ks - g if ks > g else 0
    k2 = ks + g if ks + g < s - 1 else s - 1
    cmps = _select(W, w0, w0 + s, w0 + k1, TW, False, W, TW, w0 + s)
    v1 = W[w0 + k1]
    if k2 > k1:
        cmps += _select(W, w0 + k1 + 1, w0 + s, w0 + k2, TW, False, W, TW, w0 + s)
    v2 = W[w0 + k2]
    left = w0
    right = w0 + n - 1
    mid = lo
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
            _put(a, tags, has_tags, W, TW, y, left)
            left += 1
        elif side == 2:
            _put(a, tags, has_tags, W, TW, y, right)
            right -= 1
        else:
            a[mid] = x
            if has_tags:
                tags[mid] = tags[y]
            mid += 1
    L = left - w0
    M = mid - lo
    y = M - 1
    while y >= 0:
        a[lo + L + y] = a[lo + y]
        if has_tags:
            tags[lo + L + y] = tags[lo + y]
        y -= 1
    for y in range(L):
        a[lo + y] = W[w0 + y]
        if has_tags:
            tags[lo + y] = TW[w0 + y]
    for y in range(lo + L + M, hi):
        a[y] = W[w0 + n - 1 - (y - lo - L - M)]
        if has_tags:
            tags[y] = TW[w0 + n - 1 - (y - lo - L - M)]
    if k < lo + L:
        phi[0] = lo + L
    elif k >= lo + L + M:
        plo[0] = lo + L + M
    elif v1 == v2:
        plo[0] = k
        phi[0] = k + 1
    else:
        plo[0] = lo + L
        phi[0] = lo + L + M
    return cmps


cdef i64 _select(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t k,
                 i64[::1] tags, bint has_tags, i64[::1] W, i64[::1] TW,
                 Py_ssize_t w0) noexcept nogil:
    cdef i64 cmps = 0, v, pt = 0
    cdef Py_ssize_t n, g, j, base, mid, left, right, x, s, y, p, y0, y1
    cdef int misses = 0
    while True:
        n = hi - lo
        if n <= SMALL_SELECT:
            return cmps + _insertion_sort(a, lo, hi, tags, has_tags)
        if misses < FR_MISSES and n >= FR_MIN:
            cmps += _fr_step(a, &lo, &hi, k, tags, has_tags, W, TW, w0)
            if 2 * (hi - lo) > n:
                misses += 1
            continue
        g = n // 5
        base = w0 + n
        for j in range(g):
            _arrange5(a, tags, has_tags, lo + 5 * j)
            W[base + j] = a[lo + 5 * j + 2]
            TW[base + j] = j
        cmps += 6 * g
        mid = (g - 1) // 2
        cmps += _select(W, base, base + g, base + mid, TW, True, W, TW, base + g)
        v = W[base + mid]
        left = w0
        right = w0 + n - 1
        for x in range(g):
            s = lo + 5 * TW[base + x]
            if x < mid:
                for y in range(s, s + 3):
                    _put(a, tags, has_tags, W, TW, y, left)
                    left += 1
                y0 = s + 3
            elif x > mid:
                for y in range(s + 2, s + 5):
                    _put(a, tags, has_tags, W, TW, y, right)
                    right -= 1
                y0 = s
            else:
                for y in range(s, s + 2):
                    _put(a, tags, has_tags, W, TW, y, left)
                    left += 1
                for y in range(s + 3, s + 5):
                    _put(a, tags, has_tags, W, TW, y, right)
                    right -= 1
                if has_tags:
                    pt = tags[s + 2]
                continue
            for y in range(y0, y0 + 2):
                cmps += 1
                if a[y] < v or (x < mid and a[y] == v):
                    _put(a, tags, has_tags, W, TW, y, left)
                    left += 1
                else:
                    _put(a, tags, has_tags, W, TW, y, right)
                    right -= 1
        for y in range(lo + 5 * g, hi):
            cmps += 1
            if a[y] <= v:
                _put(a, tags, has_tags, W, TW, y, left)
                left += 1
            else:
                _put(a, tags, has_tags, W, TW, y, right)
                right -= 1
        W[left] = v
        if has_tags:
            TW[left] = pt
        for y in range(n):
            a[lo + y] = W[w0 + y]
            if has_tags:
                tags[lo + y] = TW[w0 + y]
        p = lo + left - w0
        if k == p:
            return cmps
        if k < p:
            hi = p
        else:
            lo = p + 1


def select_kth(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t k, i64[::1] tags=None):
    cdef bint has_tags = tags is not None
    cdef i64 r
    if not (lo <= k < hi):
        raise ValueError("k outside range")
    cdef i64[::1] W = np.empty(2 * (hi - lo) + 16, dtype=np.int64)
    cdef i64[::1] TW = np.empty(2 * (hi - lo) + 16, dtype=np.int64)
    with nogil:
        r = _select(a, lo, hi, k, tags, has_tags, W, TW, 0)
    return r


cdef i64 _merge(i64[::1] a, Py_ssize_t lo, Py_ssize_t mid, Py_ssize_t hi, i64[::1] buf,
                i64[::1] tags, i64[::1] tbuf, bint has_tags) noexcept nogil:
    cdef i64 cmps = 0
    cdef Py_ssize_t i = lo, j = mid, w = 0, x
    if lo >= mid or mid >= hi:
        return 0
    while i < mid and j < hi:
        cmps += 1
        if a[j] < a[i]:
            buf[w] = a[j]
            if has_tags:
                tbuf[w] = tags[j]
            j += 1
        else:
            buf[w] = a[i]
            if has_tags:
                tbuf[w] = tags[i]
            i += 1
        w += 1
    while i < mid:
        buf[w] = a[i]
        if has_tags:
            tbuf[w] = tags[i]
        i += 1
        w += 1
    for x in range(w):
        a[lo + x] = buf[x]
        if has_tags:
            tags[lo + x] = tbuf[x]
    return cmps


def merge(i64[::1] a, Py_ssize_t lo, Py_ssize_t mid, Py_ssize_t hi, i64[::1] buf,
          i64[::1] tags=None, i64[::1] tbuf=None):
    cdef bint has_tags = tags is not None
    cdef i64 r
    with nogil:
        r = _merge(a, lo, mid, hi, buf, tags, tbuf, has_tags)
    return r


def merge_sort(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, i64[::1] buf,
               i64[::1] tags=None, i64[::1] tbuf=None):
    cdef bint has_tags = tags is not None
    cdef i64 cmps = 0
    cdef Py_ssize_t width = 1, n = hi - lo, s, e
    with nogil:
        while width < n:
            s = lo
            while s + width < hi:
                e = s + 2 * width
                if e > hi:
                    e = hi
                cmps += _merge(a, s, s + width, e, buf, tags, tbuf, has_tags)
                s = e
            width *= 2
    return cmps


cdef Py_ssize_t _collect_runs(u8[::1] rs, Py_ssize_t lo, Py_ssize_t hi,
                              Py_ssize_t[::1] starts) except -1:
    cdef Py_ssize_t k = 0, x
    if hi <= lo or not rs[lo]:
        raise ValueError("interval does not begin a run")
    for x in range(lo, hi):
        if rs[x]:
            starts[k] = x
            k += 1
    starts[k] = hi
    return k


cdef i64 _merge_into(i64[::1] a, Py_ssize_t i, Py_ssize_t iend, Py_ssize_t j,
                     Py_ssize_t jend, i64[::1] buf, Py_ssize_t k) noexcept nogil:
    cdef i64 cmps = 0
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


def normalize_runs(i64[::1] a, u8[::1] rs, Py_ssize_t lo, Py_ssize_t hi,
                   Py_ssize_t ell, i64[::1] buf):
    cdef i64 cmps = 0
    cdef Py_ssize_t length = 1, nruns, r, s, e, w, pending, same, x, ln
    cdef bint pend
    cdef Py_ssize_t[::1] starts = np.empty(hi - lo + 1, dtype=np.intp)
    while length < ell:
        nruns = _collect_runs(rs, lo, hi, starts)
        same = 0
        for r in range(nruns):
            if starts[r + 1] - starts[r] == length:
                same += 1
        if same >= 2:
            w = lo
            pending = -1
            for r in range(nruns):
                s = starts[r]
                e = starts[r + 1]
                if e - s != length:
                    for x in range(e - s):
                        buf[w - lo + x] = a[s + x]
                    w += e - s
                    continue
                if pending < 0:
                    pending = s
                    continue
                cmps += _merge_into(a, pending, pending + length, s, e, buf, w - lo)
                w += 2 * length
                pending = -1
            if pending >= 0:
                for x in range(length):
                    buf[w - lo + x] = a[pending + x]
            for x in range(hi - lo):
                a[lo + x] = buf[x]
            for x in range(lo, hi):
                rs[x] = 0
            w = lo
            pend = False
            for r in range(nruns):
                ln = starts[r + 1] - starts[r]
                if ln != length:
                    rs[w] = 1
                    w += ln
                elif not pend:
                    pend = True
                else:
                    rs[w] = 1
                    w += 2 * length
                    pend = False
            if pend:
                rs[w] = 1
        length += 1
    return cmps


def run_medians(i64[::1] a, u8[::1] rs, Py_ssize_t lo, Py_ssize_t hi,
                i64[::1] vals, i64[::1] idx):
    cdef Py_ssize_t k = 0, start = lo, x, m
    for x in range(lo + 1, hi + 1):
        if x == hi or rs[x]:
            m = start + (x - start) // 2
            vals[k] = a[m]
            idx[k] = m
            k += 1
            start = x
    return k


def partition_runs(i64[::1] a, u8[::1] rs, Py_ssize_t lo, Py_ssize_t hi,
                   Py_ssize_t p, i64[::1] buf, u8[::1] le=None):
    cdef bint has_le = le is not None
    cdef i64 v = a[p], cmps = 0
    cdef Py_ssize_t nruns, r, s, e, u, w, pos, x
    cdef Py_ssize_t[::1] starts = np.empty(hi - lo + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] cuts
    nruns = _collect_runs(rs, lo, hi, starts)
    cuts = np.empty(nruns, dtype=np.intp)
    for r in range(nruns):
        s = starts[r]
        e = starts[r + 1]
        if s <= p < e:
            cuts[r] = _upper(a, p + 1, e, v, &cmps)
        elif has_le and le[s + (e - s) // 2]:
            cuts[r] = _upper(a, s + (e - s) // 2 + 1, e, v, &cmps)
        else:
            cuts[r] = _upper(a, s, e, v, &cmps)
    for x in range(lo, hi):
        rs[x] = 0
    w = 0
    for r in range(nruns):
        s = starts[r]
        e = starts[r + 1]
        u = cuts[r]
        if s <= p < e:
            if p > s:
                for x in range(s, p):
                    buf[w + x - s] = a[x]
                rs[lo + w] = 1
                w += p - s
                if u > p + 1:
                    for x in range(p + 1, u):
                        buf[w + x - p - 1] = a[x]
                    w += u - p - 1
            elif u > p + 1:
                for x in range(p + 1, u):
                    buf[w + x - p - 1] = a[x]
                rs[lo + w] = 1
                w += u - p - 1
        elif u > s:
            for x in range(s, u):
                buf[w + x - s] = a[x]
            rs[lo + w] = 1
            w += u - s
    pos = lo + w
    buf[w] = v
    rs[pos] = 1
    w += 1
    for r in range(nruns):
        e = starts[r + 1]
        u = cuts[r]
        if e > u:
            for x in range(u, e):
                buf[w + x - u] = a[x]
            rs[lo + w] = 1
            w += e - u
    for x in range(hi - lo):
        a[lo + x] = buf[x]
    return pos, cmps


def sort_runs(i64[::1] a, u8[::1] rs, Py_ssize_t lo, Py_ssize_t hi, i64[::1] buf):
    cdef i64 cmps = 0
    cdef Py_ssize_t nb, i, k, x
    cdef Py_ssize_t[::1] bounds = np.empty(hi - lo + 1, dtype=np.intp)
    nb = _collect_runs(rs, lo, hi, bounds) + 1
    while nb > 2:
        k = 1
        i = 0
        while i + 2 < nb:
            cmps += _merge(a, bounds[i], bounds[i + 1], bounds[i + 2], buf, None, None, False)
            bounds[k] = bounds[i + 2]
            k += 1
            i += 2
        if i + 1 < nb and bounds[k - 1] != bounds[nb - 1]:
            bounds[k] = bounds[nb - 1]
            k += 1
        nb = k
    for x in range(lo + 1, hi):
        rs[x] = 0
    return cmps


def distribute(i64[::1] a, Py_ssize_t lo, Py_ssize_t hi, i64[::1] samples,
               u8[::1] claimed, i64[::1] out):
    cdef Py_ssize_t d = samples.shape[0], i, left, right, mid, b, k
    cdef i64 x, cmps = 0
    for i in range(lo, hi):
        x = a[i]
        left = 0
        right = d
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
