"""AVL tree over variable-length chunks, addressed by chunk ordinal.

Each node carries one chunk (``data`` with ``n`` items) and caches the
subtree item count, the subtree one-count (only meaningful for bit chunks)
and the subtree node count.  Leaf edits that keep the chunk nonempty patch
the caches along the descent path; splits and removals go through the
rebalancing insert/delete below.
"""

from __future__ import annotations


class Node:
    __slots__ = ("left", "right", "h", "nodes", "size", "ones", "n", "c1", "data")

    def __init__(self, data, n: int, c1: int = 0):
        self.left = None
        self.right = None
        self.h = 1
        self.nodes = 1
        self.size = n
        self.ones = c1
        self.n = n
        self.c1 = c1
        self.data = data


def _update(t: Node) -> None:
    l, r = t.left, t.right
    h, nodes, size, ones = 0, 1, t.n, t.c1
    if l is not None:
        h, nodes, size, ones = l.h, nodes + l.nodes, size + l.size, ones + l.ones
    if r is not None:
        if r.h > h:
            h = r.h
        nodes += r.nodes
        size += r.size
        ones += r.ones
    t.h = h + 1
    t.nodes = nodes
    t.size = size
    t.ones = ones


def _h(t) -> int:
    return t.h if t is not None else 0


def _rot_right(t: Node) -> Node:
    l = t.left
    t.left = l.right
    l.right = t
    _update(t)
    _update(l)
    return l


def _rot_left(t: Node) -> Node:
    r = t.right
    t.right = r.left
    r.left = t
    _update(t)
    _update(r)
    return r


def _balance(t: Node) -> Node:
    _update(t)
    bf = _h(t.left) - _h(t.right)
    if bf > 1:
        if _h(t.left.left) < _h(t.left.right):
            t.left = _rot_left(t.left)
        return _rot_right(t)
    if bf < -1:
        if _h(t.right.right) < _h(t.right.left):
            t.right = _rot_right(t.right)
        return _rot_left(t)
    return t


def insert_node(t, k: int, new: Node) -> Node:
    """Insert ``new`` so that it becomes the ``k``-th node (0-based)."""
    if t is None:
        return new
    lk = t.left.nodes if t.left is not None else 0
    if k <= lk:
        t.left = insert_node(t.left, k, new)
    else:
        t.right = insert_node(t.right, k - lk - 1, new)
    return _balance(t)


def _pop_min(t: Node):
    if t.left is None:
        return t.right, t
    t.left, m = _pop_min(t.left)
    return _balance(t), m


def delete_node(t: Node, k: int):
    lk = t.left.nodes if t.left is not None else 0
    if k < lk:
        t.left = delete_node(t.left, k)
    elif k > lk:
        t.right = delete_node(t.right, k - lk - 1)
    else:
        if t.left is None:
            return t.right
        if t.right is None:
            return t.left
        rest, m = _pop_min(t.right)
        m.left, m.right = t.left, rest
        t = m
    return _balance(t)


def build(chunks: list[tuple]) -> Node | None:
    """Balanced tree from ``(data, n, c1)`` triples in order."""

    def rec(lo: int, hi: int):
        if lo >= hi:
            return None
        mid = (lo + hi) // 2
        t = Node(*chunks[mid])
        t.left = rec(lo, mid)
        t.right = rec(mid + 1, hi)
        _update(t)
        return t

    return rec(0, len(chunks))


def inorder(t):
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        yield t
        t = t.right


def check(t) -> None:
    """Raise AssertionError if any cached field or balance condition is off."""

    def rec(t):
        if t is None:
            return 0, 0, 0, 0
        lh, ln, ls, lo = rec(t.left)
        rh, rn, rs, ro = rec(t.right)
        assert abs(lh - rh) <= 1, "unbalanced"
        assert t.h == max(lh, rh) + 1
        assert t.nodes == ln + rn + 1
        assert t.size == ls + rs + t.n
        assert t.ones == lo + ro + t.c1
        return t.h, t.nodes, t.size, t.ones

    rec(t)


class ValueSeq:
    """Positional sequence of arbitrary values, chunked lists in an AVL tree."""

    def __init__(self, values=(), cap: int = 64):
        self.cap = cap
        vals = list(values)
        half = max(1, cap // 2)
        self.root = build([(vals[i:i + half], len(vals[i:i + half]), 0) for i in range(0, len(vals), half)])

    def __len__(self) -> int:
        return self.root.size if self.root is not None else 0

    def _find(self, p: int, for_insert: bool = False):
        # returns (node, offset, ordinal, path)
        t, ordinal, path = self.root, 0, []
        while True:
            path.append(t)
            ls = t.left.size if t.left is not None else 0
            if p < ls:
                t = t.left
                continue
            p -= ls
            lk = t.left.nodes if t.left is not None else 0
            if p < t.n or (for_insert and p == t.n):
                return t, p, ordinal + lk, path
            p -= t.n
            ordinal += lk + 1
            t = t.right

    def __getitem__(self, k: int):
        if not 0 <= k < len(self):
            raise IndexError(k)
        t, off, _, _ = self._find(k)
        return t.data[off]

    def insert(self, k: int, value) -> None:
        if not 0 <= k <= len(self):
            raise IndexError(k)
        if self.root is None:
            self.root = Node([value], 1)
            return
        t, off, ordinal, path = self._find(k, for_insert=True)
        t.data.insert(off, value)
        t.n += 1
        for u in path:
            u.size += 1
        if t.n > self.cap:
            half = t.n // 2
            tail = t.data[half:]
            del t.data[half:]
            t.n = half
            for u in path:
                u.size -= len(tail)
            self.root = insert_node(self.root, ordinal + 1, Node(tail, len(tail)))

    def pop(self, k: int):
        if not 0 <= k < len(self):
            raise IndexError(k)
        t, off, ordinal, path = self._find(k)
        value = t.data.pop(off)
        t.n -= 1
        for u in path:
            u.size -= 1
        if t.n == 0:
            self.root = delete_node(self.root, ordinal)
        return value

    def __iter__(self):
        for t in inorder(self.root):
            yield from t.data

    def tolist(self) -> list:
        return list(self)
