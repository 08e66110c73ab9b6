import bisect
import io
import json
import math
import random

import numpy as np
import pytest

from lazysort.extmem import (BlockStore, Extent, ExtentMap, ExternalDynamic, ExternalSelector,
                             MemoryBudgetError, PivotBTree, d_way_partition, max_splitters,
                             mergesort_ios, ms_sample, rank_window)

from . import oracles


def _laid_out(x, B, M):
    st = BlockStore(B, M)
    x = np.asarray(x, dtype=np.int64)
    return st, ExtentMap(B, [Extent(1, len(x), st.place(x), 0)])


def _contents(st, em, lo, hi):
    return np.concatenate([st.peek(b)[i0:i1] for b, i0, i1, _ in em.pieces(lo, hi)])


def test_blockstore_counts_and_budget():
    st = BlockStore(4, 16)
    ids = st.place(range(10))
    assert len(ids) == 3 and st.ios == 0
    assert list(st.read(ids[1])) == [4, 5, 6, 7]
    st.write(ids[0], np.array([9, 9]))
    assert st.counters() == (1, 1)
    with st.hold(3):
        with pytest.raises(MemoryBudgetError):
            st.pin(2)
    assert st.pinned == 0 and st.peak_pinned == 3
    with pytest.raises(ValueError):
        BlockStore(8, 8)


def test_extent_map_pieces_and_replace():
    st, em = _laid_out(range(10), 4, 16)
    assert [(i0, i1, p) for _, i0, i1, p in em.pieces(3, 9)] == [(2, 4, 3), (0, 4, 5)]
    assert [(i0, i1, p) for _, i0, i1, p in em.pieces(3, 10)][-1] == (0, 1, 9)
    assert em.block_count(1, 11) == 3
    new = st.place([70, 71])
    em.replace(5, 7, [Extent(5, 2, new, 0)])
    assert list(_contents(st, em, 1, 11)) == [0, 1, 2, 3, 70, 71, 6, 7, 8, 9]
    with pytest.raises(IndexError):
        em.find(11)


@pytest.mark.parametrize("d", [1, 4, 16])
def test_sample_ranks_inside_windows(d):
    N = 1 << 12
    for seed in range(5):
        x = np.random.default_rng(seed).permutation(N)
        st, em = _laid_out(x, 16, 2048)
        s, _ = ms_sample(st, em, 1, N + 1, d)
        assert len(s) == d and list(s) == sorted(s)
        for j, v in enumerate(s, 1):
            lo, hi = oracles.sample_window(N, d, j)
            assert (lo, hi) == pytest.approx(rank_window(N, d, j))
            assert lo <= v + 1 <= hi


def test_sample_on_sorted_and_duplicate_input():
    N = 3000
    for x in (np.arange(N), np.repeat(np.arange(10), N // 10)):
        st, em = _laid_out(x, 16, 2048)
        s, _ = ms_sample(st, em, 1, N + 1, 8)
        srt = np.sort(x)
        for j, v in enumerate(s, 1):
            lo, hi = rank_window(N, 8, j)
            # some occurrence of v has a rank inside the window
            first = int(np.searchsorted(srt, v)) + 1
            last = int(np.searchsorted(srt, v, side="right"))
            assert first <= hi and last >= lo
        assert st.pinned == 0


def test_partition_io_and_layout():
    B, N = 16, 160
    x = np.random.default_rng(1).permutation(N)
    st, em = _laid_out(x, B, 16 * B)
    samples = np.sort(x[:4])
    res = d_way_partition(st, em, 1, N + 1, samples)
    assert st.ios <= 2 * 10 + 4 + 1
    em.replace(1, N + 1, res.extents)
    out = _contents(st, em, 1, N + 1)
    assert sorted(out) == list(range(N))
    pos = 1
    for k, e in enumerate(res.extents):
        vals = out[e.start - 1:e.end - 1]
        if k:
            assert vals[0] == samples[k - 1] and e.start == res.pivots[k - 1]
        lo = samples[k - 1] if k else -1
        hi = samples[k] if k < 4 else N
        assert all(lo <= v < hi for v in vals)
        assert e.start == pos
        pos = e.end


def test_partition_copy_and_equal_keys():
    B = 8
    st, em = _laid_out(np.arange(50)[::-1], B, 8 * B)
    res = d_way_partition(st, em, 1, 51, np.array([], dtype=np.int64))
    assert st.ios <= 2 * 7 + 1 and len(res.extents) == 1
    st, em = _laid_out([5] * 40, B, 8 * B)
    res = d_way_partition(st, em, 1, 41, np.array([5, 5], dtype=np.int64))
    sizes = [e.length for e in res.extents]
    assert sizes[0] == 0 and sizes[1] == 1 and sizes[2] == 39
    assert res.equal_left[2] == 38
    with pytest.raises(ValueError):
        d_way_partition(st, em, 1, 41, np.zeros(max_splitters(st) + 1, dtype=np.int64))


def test_btree_bracket_and_height():
    st = BlockStore(8, 64)
    t = PivotBTree(st)
    keys = [(2 * i, i) for i in range(1, 2001)]
    random.Random(0).shuffle(keys)
    t.insert_many(keys[:1000])
    for k in keys[1000:]:
        t.insert(k)
    assert t.keys() == sorted(keys)
    assert t.height() <= math.ceil(math.log(2000, 2)) and t.height() >= 3
    assert t.bracket(7) == ((6, 3), (8, 4))
    assert t.bracket(8) == ((6, 3), (8, 4))
    assert t.bracket(1) == (None, (2, 1))
    assert t.bracket(10 ** 6) == ((4000, 2000), None)
    before = st.ios
    t.bracket(1001)
    assert st.ios - before <= t.height() + 1


def test_mergesort_small_and_large():
    x = np.random.default_rng(0).permutation(500)
    out, ios = mergesort_ios(x, 16, 1024)
    assert list(out) == list(range(500)) and ios <= 2 * 32
    B, m = 8, 64
    N = B * (1 << 12)
    x = np.random.default_rng(1).integers(0, 100, N)
    out, ios = mergesort_ios(x, B, B * m)
    n = N // B
    assert list(out) == sorted(x) and ios <= 4 * n * math.log(n, m)
    out, ios2 = mergesort_ios(np.arange(N), B, B * m)
    assert list(out) == list(range(N)) and ios2 <= 4 * n * math.log(n, m)


def test_external_selector_fuzz():
    rng = random.Random(5)
    N, B, M = 1 << 14, 32, 32 * 32
    for dup in (False, True):
        x = [rng.randint(0, 50 if dup else 10 ** 9) for _ in range(N)]
        S = ExternalSelector(x, B, M)
        ref = sorted(x)
        for _ in range(200):
            if rng.random() < 0.5:
                i = rng.randint(1, N)
                assert S.select(i) == ref[i - 1]
            else:
                p = rng.choice(ref) if rng.random() < 0.5 else rng.randint(-1, 10 ** 9)
                assert S.search(p) == oracles.search(ref, p)
        assert S.store.pinned == 0 and S.store.peak_pinned <= S.store.m


def test_external_dynamic_fuzz():
    rng = random.Random(9)
    x = [rng.randint(0, 200) for _ in range(600)]
    D = ExternalDynamic(x, 16, 16 * 16)
    ref = sorted(x)
    for _ in range(1500):
        u = rng.random()
        if u < 0.25:
            a = rng.randint(0, 200)
            D.insert(a)
            bisect.insort(ref, a)
        elif u < 0.5:
            i = rng.randint(1, len(ref))
            D.delete(i)
            ref.pop(i - 1)
        elif u < 0.8:
            i = rng.randint(1, len(ref))
            assert D.select(i) == ref[i - 1]
        else:
            a = rng.randint(-1, 201)
            assert D.search(a) == oracles.search(ref, a)
    assert D.rebuilds >= 1 and D.store.ios > 0


def test_repeat_queries_are_cheap():
    x = np.random.default_rng(3).permutation(1 << 13)
    S = ExternalSelector(x, 32, 2048)
    S.select(1000)
    before = S.store.ios
    for _ in range(10):
        assert S.select(1000) == 999
    assert S.store.ios - before <= 1
    before = S.store.ios
    assert S.search(0) == 1 and S.search(-5) == 0 and S.search(1 << 13) == 1 << 13
    assert S.store.ios == before


def test_requires_four_blocks():
    with pytest.raises(ValueError):
        ExternalSelector([3, 1, 2], 8, 24)
    with pytest.raises(ValueError):
        ExternalSelector([], 8, 64)


def test_trace_records():
    S = ExternalSelector(np.arange(4096)[::-1], 16, 1024, trace=True)
    S.select(7)
    S.search(100)
    buf = io.StringIO()
    S.store.dump_trace(buf)
    recs = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert recs[0]["op"] == "preprocess" and recs[-1]["op"] == "search"
    assert {"op", "io_reads", "io_writes", "cumulative"} == set(recs[-1])
    cum = [r["cumulative"] for r in recs]
    assert cum == sorted(cum) and cum[-1] == S.store.ios
    assert all(r["cumulative"] == r["io_reads"] + r["io_writes"] for r in recs)
