import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lazysort import ComparisonLedger, OptimalSelector, SimpleSelector
from lazysort.optimal_runs import run_length_target

from . import oracles

MAKERS = {
    "last": lambda v: SimpleSelector(v, "last"),
    "median": lambda v: SimpleSelector(v, "median"),
    "random": lambda v: SimpleSelector(v, "random", seed=7),
    "optimal": lambda v: OptimalSelector(v),
}


@pytest.mark.parametrize("name", MAKERS)
def test_small_examples(name):
    make = MAKERS[name]
    assert make([3, 1, 2]).select(2) == 2
    assert make([3, 1, 2]).search(2) == 2
    assert make([10, 20, 30]).search(25) == 2
    assert make([10, 20, 30]).search(5) == 0
    assert make([10, 20, 30]).search(31) == 3


@pytest.mark.parametrize("name", MAKERS)
def test_preprocess_places_extremes(name):
    S = MAKERS[name]([5, 1, 9, 3])
    assert S.A[0] == 1 and S.A[3] == 9
    assert sorted(S.A[1:3].tolist()) == [3, 5]
    assert S.B.is_marked(1) and S.B.is_marked(4)
    S = MAKERS[name]([2, 2, 2])
    assert S.A.tolist() == [2, 2, 2] and S.B.is_marked(1) and S.B.is_marked(3)


def test_partition_example():
    S = SimpleSelector([5, 2, 8, 6], "last")
    S.A[:] = [5, 2, 8, 6]  # undo preprocessing to match the worked example
    pos = S.partition(1, 4, 4)
    assert pos == 3 and sorted(S.A[:2].tolist()) == [2, 5] and S.A[3] == 8
    assert S.B.is_marked(3)
    with pytest.raises(ValueError):
        S.partition(1, 2, 4)


def test_errors():
    with pytest.raises(ValueError):
        SimpleSelector([])
    with pytest.raises(ValueError):
        OptimalSelector([])
    with pytest.raises(ValueError):
        SimpleSelector([1, 2], "mystery")
    S = OptimalSelector([4, 2])
    with pytest.raises(ValueError):
        S.select(3)
    with pytest.raises(ValueError):
        S.select(0)


def test_run_length_target():
    assert [run_length_target(d) for d in range(8)] == [1, 2, 2, 3, 3, 3, 3, 4]


def test_repeated_select_costs_nothing():
    S = OptimalSelector(np.random.default_rng(0).permutation(2000))
    S.select(700)
    before = S.ledger.total()
    assert S.select(700) == 699
    assert S.ledger.total() == before


def test_shared_ledger_and_phases():
    led = ComparisonLedger()
    S = OptimalSelector(np.random.default_rng(1).permutation(1 << 12), ledger=led)
    for r in range(1, 1 << 12, 97):
        S.select(r)
    d = led.as_dict()
    assert S.ledger is led and d["merge_cmp"] > 0 and d["pivot_cmp"] > 0 and d["partition_cmp"] > 0


def test_random_policy_deterministic_given_seed():
    x = np.random.default_rng(3).permutation(3000)
    runs = []
    for _ in range(2):
        S = SimpleSelector(x, "random", seed=11)
        for r in (5, 1500, 2999):
            S.select(r)
        runs.append(S.ledger.as_dict())
    assert runs[0] == runs[1]


def test_full_sort_sorts():
    x = np.random.default_rng(2).integers(0, 50, 3000)
    for make in MAKERS.values():
        S = make(x)
        for r in range(1, 3001):
            S.select(r)
        assert S.A.tolist() == sorted(x.tolist()) and S.B.count() == 3000


def test_optimal_debug_log():
    import io
    O = OptimalSelector(np.random.default_rng(4).permutation(5000), debug=True)
    O.select(2500)
    buf = io.StringIO()
    O.dump_pivot_tree(buf)
    lines = buf.getvalue().splitlines()
    assert lines and '"kind"' in lines[0]
    assert O.run_entropy() >= 0 and all(sum(g) > 0 for g in O.gap_run_lengths())


values = st.lists(st.integers(0, 6) | st.integers(-1000, 1000), min_size=1, max_size=200)
ops = st.lists(st.tuples(st.booleans(), st.integers(0, 10 ** 6)), max_size=40)


@pytest.mark.parametrize("name", MAKERS)
@given(vals=values, seq=ops)
@settings(max_examples=80, deadline=None)
def test_matches_oracle(name, vals, seq):
    S = MAKERS[name](vals)
    for is_select, x in seq:
        if is_select:
            i = 1 + x % len(vals)
            assert S.select(i) == oracles.select(vals, i)
        else:
            p = x % 1010 - 5 if x % 2 else vals[x % len(vals)]
            assert S.search(p) == oracles.search(vals, p)
    assert S.check_marks()
    assert sorted(S.A.tolist()) == sorted(vals)
