import pytest
from hypothesis import settings
from hypothesis import strategies as st
from hypothesis.stateful import RuleBasedStateMachine, invariant, precondition, rule

from lazysort._seqtree import ValueSeq
from lazysort.bitvec import DynamicBitvector, MarkBitvector

from .oracles import NaiveBits


def test_rank_select_example():
    v = DynamicBitvector([1, 0, 1, 1, 0])
    assert v.rank(1, 3) == 2
    assert v.select(1, 3) == 4
    assert v.rank(0, 5) == 2


def test_flip_then_delete_example():
    v = DynamicBitvector([1, 0, 1, 1, 0])
    v.flip(2)
    assert v.dump() == "11110"
    v.delete(5)
    assert v.dump() == "1111"


def test_insert_into_empty():
    v = DynamicBitvector()
    v.insert(1, 1)
    assert v.dump() == "1" and len(v) == 1


def test_errors():
    v = DynamicBitvector([0, 1])
    with pytest.raises(ValueError):
        v.get(0)
    with pytest.raises(ValueError):
        v.insert(4, 1)
    with pytest.raises(ValueError):
        v.rank(1, 3)
    with pytest.raises(LookupError):
        v.select(1, 2)
    with pytest.raises(ValueError):
        DynamicBitvector(cap=1)


def test_many_chunks_stay_balanced():
    v = DynamicBitvector.zeros(5000, cap=8)
    for i in range(1, 5001, 7):
        v.flip(i)
    v.check()
    assert v.count(1) == len(range(1, 5001, 7))
    assert v.height() <= 2 * (5000 // 4).bit_length()


def test_mark_bitvector():
    V = MarkBitvector(10)
    assert V.prev_marked(5) == 0 and V.next_marked(5) == 11
    V.mark(4)
    V.mark_range(7, 8)
    assert V.is_marked(4) and V.is_marked(8) and not V.is_marked(9)
    assert V.prev_marked(6) == 4 and V.next_marked(5) == 7
    assert V.positions() == [4, 7, 8] and V.count() == 3
    with pytest.raises(ValueError):
        V.mark(11)


class BitvectorMachine(RuleBasedStateMachine):
    def __init__(self):
        super().__init__()
        self.v = DynamicBitvector(cap=4)
        self.ref = NaiveBits()

    @rule(data=st.data(), b=st.integers(0, 1))
    def insert(self, data, b):
        i = data.draw(st.integers(1, len(self.ref) + 1))
        self.v.insert(i, b)
        self.ref.insert(i, b)

    @precondition(lambda self: len(self.ref) > 0)
    @rule(data=st.data())
    def delete(self, data):
        i = data.draw(st.integers(1, len(self.ref)))
        assert self.v.delete(i) == self.ref.delete(i)

    @precondition(lambda self: len(self.ref) > 0)
    @rule(data=st.data())
    def flip(self, data):
        i = data.draw(st.integers(1, len(self.ref)))
        assert self.v.flip(i) == self.ref.flip(i)

    @rule(data=st.data(), b=st.integers(0, 1))
    def rank(self, data, b):
        i = data.draw(st.integers(0, len(self.ref)))
        assert self.v.rank(b, i) == self.ref.rank(b, i)

    @rule(data=st.data(), b=st.integers(0, 1))
    def select(self, data, b):
        total = self.ref.rank(b, len(self.ref))
        if total:
            j = data.draw(st.integers(1, total))
            assert self.v.select(b, j) == self.ref.select(b, j)

    @invariant()
    def same_bits(self):
        assert self.v.tolist() == self.ref.b
        self.v.check()


TestBitvectorMachine = BitvectorMachine.TestCase
TestBitvectorMachine.settings = settings(max_examples=60, stateful_step_count=80, deadline=None)



def test_value_seq_matches_list():
    import random
    rng = random.Random(4)
    seq, ref = ValueSeq(cap=4), []
    for _ in range(3000):
        if ref and rng.random() < 0.4:
            k = rng.randrange(len(ref))
            assert seq.pop(k) == ref.pop(k)
        else:
            k = rng.randint(0, len(ref))
            v = rng.randint(0, 99)
            seq.insert(k, v)
            ref.insert(k, v)
        if ref:
            k = rng.randrange(len(ref))
            assert seq[k] == ref[k]
    assert seq.tolist() == ref and len(seq) == len(ref)
