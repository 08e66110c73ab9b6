"""B+-tree over settled pivots, stored as counted disk nodes."""

from __future__ import annotations

import bisect
import math

from .blockstore import BlockStore

Key = tuple[int, int]  # (value, position)


class _Node:
    __slots__ = ("keys", "children", "prev", "next")

    def __init__(self, keys=None, children=None):
        self.keys: list[Key] = keys or []
        self.children: list[int] | None = children
        self.prev = -1
        self.next = -1


class PivotBTree:
    """Keys ``(value, position)``; every node access is one I/O.

    Nodes hold up to ``fanout`` keys, with ``fanout = max(4, B // 2)``
    since a key is two words.  Batched inserts read and write each touched
    node once per batch.
    """

    def __init__(self, store: BlockStore, fanout: int | None = None):
        self.store = store
        self.fanout = fanout or max(4, store.B // 2)
        self._nodes: dict[int, _Node] = {0: _Node()}
        self.root = 0
        self._next_id = 1
        self.size = 0

    def height(self) -> int:
        h, t = 1, self._nodes[self.root]
        while t.children is not None:
            t = self._nodes[t.children[0]]
            h += 1
        return h

    def _new(self, node: _Node) -> int:
        nid = self._next_id
        self._next_id += 1
        self._nodes[nid] = node
        return nid

    # ---- search ---------------------------------------------------------

    def _leaf_for(self, key: Key, seen: set | None = None) -> tuple[int, list[int]]:
        path, nid = [], self.root
        while True:
            if seen is None or nid not in seen:
                self.store.charge(reads=1)
                if seen is not None:
                    seen.add(nid)
            path.append(nid)
            t = self._nodes[nid]
            if t.children is None:
                return nid, path
            nid = t.children[bisect.bisect_right(t.keys, key)]

    def bracket(self, p: int) -> tuple[Key | None, Key | None]:
        """Largest key with value ``< p`` and smallest key with value ``>= p``."""
        probe = (p, -1)
        nid, _ = self._leaf_for(probe)
        leaf = self._nodes[nid]
        i = bisect.bisect_left(leaf.keys, probe)
        pred = succ = None
        if i > 0:
            pred = leaf.keys[i - 1]
        elif leaf.prev >= 0:
            self.store.charge(reads=1)
            pk = self._nodes[leaf.prev].keys
            pred = pk[-1] if pk else None
        if i < len(leaf.keys):
            succ = leaf.keys[i]
        elif leaf.next >= 0:
            self.store.charge(reads=1)
            nk = self._nodes[leaf.next].keys
            succ = nk[0] if nk else None
        return pred, succ

    # ---- insertion ------------------------------------------------------

    def insert_many(self, keys) -> None:
        seen: set[int] = set()
        dirty: set[int] = set()
        for key in sorted(keys):
            self._insert(key, seen, dirty)
        self.store.charge(writes=len(dirty))

    def insert(self, key: Key) -> None:
        self.insert_many([key])

    def _insert(self, key: Key, seen: set, dirty: set) -> None:
        nid, path = self._leaf_for(key, seen)
        leaf = self._nodes[nid]
        i = bisect.bisect_left(leaf.keys, key)
        if i < len(leaf.keys) and leaf.keys[i] == key:
            return
        leaf.keys.insert(i, key)
        self.size += 1
        dirty.add(nid)
        # split upward while overfull
        level = len(path) - 1
        while len(self._nodes[path[level]].keys) > self.fanout:
            cur_id = path[level]
            cur = self._nodes[cur_id]
            half = len(cur.keys) // 2
            if cur.children is None:
                right = _Node(cur.keys[half:])
                cur.keys = cur.keys[:half]
                sep = right.keys[0]
                rid = self._new(right)
                right.prev, right.next = cur_id, cur.next
                if cur.next >= 0:
                    self._nodes[cur.next].prev = rid
                    dirty.add(cur.next)
                cur.next = rid
            else:
                sep = cur.keys[half]
                right = _Node(cur.keys[half + 1:], cur.children[half + 1:])
                cur.keys = cur.keys[:half]
                cur.children = cur.children[:half + 1]
                rid = self._new(right)
            seen.add(rid)
            dirty.update((cur_id, rid))
            if level == 0:
                self.root = self._new(_Node([sep], [cur_id, rid]))
                seen.add(self.root)
                dirty.add(self.root)
                break
            parent = self._nodes[path[level - 1]]
            j = bisect.bisect_right(parent.keys, sep)
            parent.keys.insert(j, sep)
            parent.children.insert(j + 1, rid)
            dirty.add(path[level - 1])
            level -= 1

    def keys(self) -> list[Key]:
        t = self._nodes[self.root]
        nid = self.root
        while t.children is not None:
            nid = t.children[0]
            t = self._nodes[nid]
        out = []
        while nid >= 0:
            out.extend(self._nodes[nid].keys)
            nid = self._nodes[nid].next
        return out

    def height_bound(self, N: int) -> float:
        return math.log(max(N, 2), max(self.store.B, 2))
