"""Pure-Python folding/expansion kernel.

Reference implementation of the hot loop; ``schutz._ckernel`` is a compiled
drop-in with the same interface. ``schutz.kernel`` selects one at import.

Vertices are integer ids that are never reused. Merged vertices keep their id
and point to a representative through a union-find forest; transition rows of
representatives may hold stale targets, so every read goes through ``find``.
"""

from __future__ import annotations

from collections import deque

NO_VERTEX = -1


class Workspace:
    """Deterministic involutive graph under construction.

    ``add_edge`` never makes the graph nondeterministic: a clashing edge is
    queued as a pending merge, and ``fold`` drains the queue.
    """

    def __init__(self, nletters: int):
        if nletters <= 0 or nletters % 2:
            raise ValueError("nletters must be a positive even number")
        self.nletters = nletters
        self._trans: list[int] = []
        self._parent: list[int] = []
        self._size: list[int] = []
        self._pending: list[tuple[int, int]] = []
        self._live = 0
        self._dirty: set[int] = set()
        self._rels: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        self._by_first: list[list[int]] = [[] for _ in range(nletters)]
        self._radius = 0

    # -- structure -------------------------------------------------------
    @property
    def live(self) -> int:
        return self._live

    @property
    def allocated(self) -> int:
        return len(self._parent)

    def add_vertex(self) -> int:
        v = len(self._parent)
        self._parent.append(v)
        self._size.append(1)
        self._trans.extend([NO_VERTEX] * self.nletters)
        self._live += 1
        self._dirty.add(v)
        return v

    def add_vertices(self, n: int) -> int:
        first = len(self._parent)
        for _ in range(n):
            self.add_vertex()
        return first

    def find(self, v: int) -> int:
        parent = self._parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def target(self, v: int, x: int) -> int:
        t = self._trans[self.find(v) * self.nletters + x]
        return t if t < 0 else self.find(t)

    def _half_edge(self, p: int, x: int, q: int) -> None:
        slot = p * self.nletters + x
        t = self._trans[slot]
        if t < 0:
            self._trans[slot] = q
            self._dirty.add(p)
        elif self.find(t) != q:
            self._pending.append((t, q))

    def add_edge(self, p: int, x: int, q: int) -> None:
        p = self.find(p)
        q = self.find(q)
        self._half_edge(p, x, q)
        self._half_edge(q, x ^ 1, p)

    def merge(self, a: int, b: int) -> None:
        self._pending.append((a, b))

    def fold(self) -> int:
        """Drain pending merges until deterministic; returns merges done."""
        pending = self._pending
        parent, size, trans, nl = self._parent, self._size, self._trans, self.nletters
        merges = 0
        while pending:
            a, b = pending.pop()
            a = self.find(a)
            b = self.find(b)
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
            self._live -= 1
            merges += 1
            self._dirty.add(a)
            ra, rb = a * nl, b * nl
            for x in range(nl):
                t = trans[rb + x]
                if t < 0:
                    continue
                e = trans[ra + x]
                if e < 0:
                    trans[ra + x] = t
                else:
                    pending.append((e, t))
        return merges

    def trace(self, v: int, word) -> int:
        trans, nl, find = self._trans, self.nletters, self.find
        v = find(v)
        for x in word:
            t = trans[v * nl + x]
            if t < 0:
                return NO_VERTEX
            v = find(t)
        return v

    def is_complete_single(self) -> bool:
        if self._live != 1:
            return False
        v = self.find(0)
        row = v * self.nletters
        return all(t >= 0 for t in self._trans[row : row + self.nletters])

    # -- relations -------------------------------------------------------
    def set_relations(self, oriented) -> None:
        """Install oriented relation pairs ``(r, r')``; all vertices become dirty."""
        self._rels = [(tuple(r), tuple(s)) for r, s in oriented]
        self._by_first = [[] for _ in range(self.nletters)]
        radius = 0
        for i, (r, s) in enumerate(self._rels):
            if not r or not s:
                raise ValueError("relation sides must be nonempty")
            self._by_first[r[0]].append(i)
            radius = max(radius, len(r), len(s))
        self._radius = radius
        self.mark_all_dirty()

    def mark_all_dirty(self) -> None:
        self._dirty = set(range(len(self._parent)))

    def _candidates(self) -> list[int]:
        find = self.find
        seen: set[int] = set()
        frontier = []
        for v in self._dirty:
            r = find(v)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
        trans, nl = self._trans, self.nletters
        for _ in range(self._radius):
            nxt = []
            for v in frontier:
                row = v * nl
                for x in range(nl):
                    t = trans[row + x]
                    if t >= 0:
                        t = find(t)
                        if t not in seen:
                            seen.add(t)
                            nxt.append(t)
            frontier = nxt
            if not frontier:
                break
        return sorted(seen)

    def detect(self) -> list[tuple[int, int, int]]:
        """Instances ``(v, u, rel)``: ``r`` reads v→u but ``r'`` does not.

        Only vertices near a change since the last round are scanned; any
        other vertex had all its instances satisfied by that round.
        """
        trans, nl, rels, by_first = self._trans, self.nletters, self._rels, self._by_first
        trace = self.trace
        found = []
        for v in self._candidates():
            row = v * nl
            for x in range(nl):
                if trans[row + x] < 0:
                    continue
                for i in by_first[x]:
                    r, s = rels[i]
                    u = trace(v, r)
                    if u >= 0 and trace(v, s) != u:
                        found.append((v, u, i))
        return found

    def apply(self, instances) -> None:
        """Graft a fresh ``r'`` path for every instance (no folding yet)."""
        rels = self._rels
        for v, u, i in instances:
            s = rels[i][1]
            p = v
            for x in s[:-1]:
                q = self.add_vertex()
                self.add_edge(p, x, q)
                p = q
            self.add_edge(p, s[-1], u)

    def expansion_round(self) -> int:
        instances = self.detect()
        self._dirty = set()
        self.apply(instances)
        self.fold()
        return len(instances)

    # -- export ----------------------------------------------------------
    def export(self, root: int) -> tuple[list[int], list[int]]:
        """BFS from ``root`` in signed-letter order.

        Returns ``(order, table)``: ``order[k]`` is the representative given
        number ``k`` and ``table[k*nletters + x]`` the number of its x-target.
        """
        find, trans, nl = self.find, self._trans, self.nletters
        root = find(root)
        number = {root: 0}
        order = [root]
        table: list[int] = []
        queue = deque([root])
        while queue:
            v = queue.popleft()
            row = v * nl
            for x in range(nl):
                t = trans[row + x]
                if t < 0:
                    table.append(NO_VERTEX)
                    continue
                t = find(t)
                k = number.get(t)
                if k is None:
                    k = number[t] = len(order)
                    order.append(t)
                    queue.append(t)
                table.append(k)
        return order, table
