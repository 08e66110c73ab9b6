"""Static pivot marks and a dynamic rank/select bitvector."""

from __future__ import annotations

from . import _seqtree
from ._seqtree import Node

# Bits per chunk before a split; see benchmarks/bench_bitvec.py.
CHUNK_BITS = 512


class MarkBitvector:
    """Length-``n`` bit array, 1-indexed, marking settled pivot positions.

    Positions ``0`` and ``n + 1`` act as permanently set virtual sentinels,
    so ``prev_marked``/``next_marked`` always have an answer.
    """

    __slots__ = ("n", "_bits")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("length must be nonnegative")
        self.n = n
        self._bits = bytearray(n + 2)
        self._bits[0] = 1
        self._bits[n + 1] = 1

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} outside [1, {self.n}]")

    def mark(self, i: int) -> None:
        self._check(i)
        self._bits[i] = 1

    def mark_range(self, lo: int, hi: int) -> None:
        """Mark every position in ``[lo, hi]``."""
        if lo > hi:
            return
        self._check(lo)
        self._check(hi)
        self._bits[lo:hi + 1] = b"\x01" * (hi - lo + 1)

    def is_marked(self, i: int) -> bool:
        self._check(i)
        return self._bits[i] == 1

    def prev_marked(self, i: int) -> int:
        """Nearest marked index strictly below ``i`` (``0`` if none)."""
        self._check(i)
        return self._bits.rfind(1, 0, i)

    def next_marked(self, i: int) -> int:
        """Nearest marked index strictly above ``i`` (``n + 1`` if none)."""
        self._check(i)
        return self._bits.find(1, i + 1)

    def count(self) -> int:
        return self._bits.count(1) - 2

    def positions(self) -> list[int]:
        out, i = [], self._bits.find(1, 1)
        while i <= self.n:
            out.append(i)
            i = self._bits.find(1, i + 1)
        return out

    def dump(self) -> str:
        return self._bits[1:self.n + 1].translate(bytes.maketrans(b"\x00\x01", b"01")).decode()


def _kth_one(word: int, n: int, j: int) -> int:
    # 0-based offset of the j-th set bit (j >= 1) in the low n bits
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if (word & ((1 << mid) - 1)).bit_count() >= j:
            hi = mid
        else:
            lo = mid + 1
    return lo - 1


class DynamicBitvector:
    """Bit sequence with rank, select, insert, delete and flip.

    Positions are 1-indexed.  Bits live in Python-int chunks of at most
    ``cap`` bits (least significant bit first) held by an AVL tree whose
    nodes cache subtree length and one-count, so every operation visits
    ``O(log n)`` chunks.
    """

    def __init__(self, bits=(), cap: int = CHUNK_BITS):
        if cap < 2:
            raise ValueError("chunk capacity must be at least 2")
        self.cap = cap
        bits = [1 if b else 0 for b in bits]
        half = max(1, cap // 2)
        chunks = []
        for s in range(0, len(bits), half):
            part = bits[s:s + half]
            word = int("".join(map(str, reversed(part))), 2)
            chunks.append((word, len(part), sum(part)))
        self.root = _seqtree.build(chunks)

    @classmethod
    def zeros(cls, n: int, cap: int = CHUNK_BITS) -> DynamicBitvector:
        bv = cls((), cap)
        half = max(1, cap // 2)
        bv.root = _seqtree.build([(0, min(half, n - s), 0) for s in range(0, n, half)])
        return bv

    def __len__(self) -> int:
        return self.root.size if self.root is not None else 0

    def count(self, b: int = 1) -> int:
        ones = self.root.ones if self.root is not None else 0
        return ones if b else len(self) - ones

    def _find(self, p: int, for_insert: bool = False):
        # chunk holding 0-based position p: (node, offset, ordinal, path)
        t, ordinal, path = self.root, 0, []
        while True:
            path.append(t)
            left = t.left
            ls = left.size if left is not None else 0
            if p < ls:
                t = left
                continue
            p -= ls
            lk = left.nodes if left is not None else 0
            if p < t.n or (for_insert and p == t.n):
                return t, p, ordinal + lk, path
            p -= t.n
            ordinal += lk + 1
            t = t.right

    def _check(self, i: int, top: int) -> None:
        if not 1 <= i <= top:
            raise ValueError(f"index {i} outside [1, {top}]")

    def get(self, i: int) -> int:
        self._check(i, len(self))
        t, off, _, _ = self._find(i - 1)
        return (t.data >> off) & 1

    def rank(self, b: int, i: int) -> int:
        """Number of ``b`` bits among positions ``1..i``."""
        if not 0 <= i <= len(self):
            raise ValueError(f"index {i} outside [0, {len(self)}]")
        t, p, acc = self.root, i, 0
        while p > 0:
            left = t.left
            ls = left.size if left is not None else 0
            if p <= ls:
                t = left
                continue
            if left is not None:
                acc += left.ones
            p -= ls
            if p <= t.n:
                acc += (t.data & ((1 << p) - 1)).bit_count()
                break
            acc += t.c1
            p -= t.n
            t = t.right
        return acc if b else i - acc

    def select(self, b: int, j: int) -> int:
        """Position of the ``j``-th ``b`` bit."""
        if j < 1 or j > self.count(b):
            raise LookupError(f"no {j}-th {b} bit")
        t, pos = self.root, 0
        while True:
            left = t.left
            if left is not None:
                lc = left.ones if b else left.size - left.ones
                if j <= lc:
                    t = left
                    continue
                j -= lc
                pos += left.size
            c = t.c1 if b else t.n - t.c1
            if j <= c:
                word = t.data if b else t.data ^ ((1 << t.n) - 1)
                return pos + _kth_one(word, t.n, j) + 1
            j -= c
            pos += t.n
            t = t.right

    def insert(self, i: int, b: int) -> None:
        """Insert bit ``b`` so that it lands at position ``i``."""
        self._check(i, len(self) + 1)
        b = 1 if b else 0
        if self.root is None:
            self.root = Node(b, 1, b)
            return
        t, off, ordinal, path = self._find(i - 1, for_insert=True)
        low = t.data & ((1 << off) - 1)
        t.data = low | (b << off) | ((t.data >> off) << (off + 1))
        t.n += 1
        t.c1 += b
        for u in path:
            u.size += 1
            u.ones += b
        if t.n > self.cap:
            self._split(t, ordinal, path)

    def _split(self, t: Node, ordinal: int, path: list) -> None:
        half = t.n // 2
        tail, tail_n = t.data >> half, t.n - half
        tail_ones = tail.bit_count()
        t.data &= (1 << half) - 1
        t.n = half
        t.c1 -= tail_ones
        for u in path:
            u.size -= tail_n
            u.ones -= tail_ones
        self.root = _seqtree.insert_node(self.root, ordinal + 1, Node(tail, tail_n, tail_ones))

    def delete(self, i: int) -> int:
        """Remove position ``i`` and return the bit that was there."""
        self._check(i, len(self))
        t, off, ordinal, path = self._find(i - 1)
        b = (t.data >> off) & 1
        t.data = (t.data & ((1 << off) - 1)) | ((t.data >> (off + 1)) << off)
        t.n -= 1
        t.c1 -= b
        for u in path:
            u.size -= 1
            u.ones -= b
        if t.n == 0:
            self.root = _seqtree.delete_node(self.root, ordinal)
        return b

    def flip(self, i: int) -> int:
        """Toggle position ``i`` and return the new bit."""
        self._check(i, len(self))
        t, off, _, path = self._find(i - 1)
        t.data ^= 1 << off
        b = (t.data >> off) & 1
        d = 1 if b else -1
        t.c1 += d
        for u in path:
            u.ones += d
        return b

    def set(self, i: int, b: int) -> None:
        if self.get(i) != (1 if b else 0):
            self.flip(i)

    def tolist(self) -> list[int]:
        out = []
        for t in _seqtree.inorder(self.root):
            out.extend((t.data >> k) & 1 for k in range(t.n))
        return out

    def dump(self) -> str:
        return "".join(map(str, self.tolist()))

    def height(self) -> int:
        return self.root.h if self.root is not None else 0

    def check(self) -> None:
        _seqtree.check(self.root)
        for t in _seqtree.inorder(self.root):
            assert 0 < t.n <= self.cap and t.data >> t.n == 0
            assert t.c1 == t.data.bit_count()
