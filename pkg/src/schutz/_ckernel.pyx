# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled folding/expansion kernel; same interface as ``schutz._pykernel``."""

from libcpp.vector cimport vector
from libcpp.pair cimport pair
from libcpp.algorithm cimport sort

DEF NO_VERTEX = -1


cdef class Workspace:
    cdef public int nletters
    cdef vector[int] _trans
    cdef vector[int] _parent
    cdef vector[int] _size
    cdef vector[pair[int, int]] _pending
    cdef int _live
    cdef vector[int] _dirty
    cdef vector[int] _dirty_stamp
    cdef vector[int] _seen
    cdef int _stamp
    cdef bint _all_dirty
    # relations, flattened: side k occupies _words[_off[k] : _off[k] + _len[k]];
    # oriented relation i reads side 2i and grafts side 2i+1.
    cdef vector[int] _words
    cdef vector[int] _off
    cdef vector[int] _len
    cdef vector[vector[int]] _by_first
    cdef int _radius

    def __init__(self, int nletters):
        if nletters <= 0 or nletters % 2:
            raise ValueError("nletters must be a positive even number")
        self.nletters = nletters
        self._live = 0
        self._stamp = 0
        self._all_dirty = False
        self._radius = 0
        self._by_first.resize(nletters)

    @property
    def live(self):
        return self._live

    @property
    def allocated(self):
        return self._parent.size()

    cdef inline void _mark(self, int v):
        if self._dirty_stamp[v] == 0:
            self._dirty_stamp[v] = 1
            self._dirty.push_back(v)

    cdef int _add_vertex(self):
        cdef int v = self._parent.size()
        cdef int x
        self._parent.push_back(v)
        self._size.push_back(1)
        self._dirty_stamp.push_back(0)
        self._seen.push_back(0)
        for x in range(self.nletters):
            self._trans.push_back(NO_VERTEX)
        self._live += 1
        self._mark(v)
        return v

    def add_vertex(self):
        return self._add_vertex()

    def add_vertices(self, int n):
        cdef int first = self._parent.size()
        cdef int i
        for i in range(n):
            self._add_vertex()
        return first

    cdef inline int _find(self, int v):
        cdef int root = v
        cdef int nxt
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[v] != root:
            nxt = self._parent[v]
            self._parent[v] = root
            v = nxt
        return root

    def find(self, int v):
        if v < 0 or v >= <int>self._parent.size():
            raise IndexError(v)
        return self._find(v)

    def target(self, int v, int x):
        if x < 0 or x >= self.nletters:
            raise IndexError(x)
        cdef int t = self._trans[self.find(v) * self.nletters + x]
        return t if t < 0 else self._find(t)

    cdef inline void _half_edge(self, int p, int x, int q):
        cdef size_t slot = <size_t>p * self.nletters + x
        cdef int t = self._trans[slot]
        if t < 0:
            self._trans[slot] = q
            self._mark(p)
        elif self._find(t) != q:
            self._pending.push_back(pair[int, int](t, q))

    cdef void _add_edge(self, int p, int x, int q):
        p = self._find(p)
        q = self._find(q)
        self._half_edge(p, x, q)
        self._half_edge(q, x ^ 1, p)

    def add_edge(self, int p, int x, int q):
        if x < 0 or x >= self.nletters:
            raise IndexError(x)
        self.find(p)
        self.find(q)
        self._add_edge(p, x, q)

    def merge(self, int a, int b):
        self.find(a)
        self.find(b)
        self._pending.push_back(pair[int, int](a, b))

    cdef int _fold(self):
        cdef int a, b, x, t, e, merges = 0
        cdef size_t ra, rb
        cdef int nl = self.nletters
        cdef pair[int, int] ab
        while not self._pending.empty():
            ab = self._pending.back()
            self._pending.pop_back()
            a = self._find(ab.first)
            b = self._find(ab.second)
            if a == b:
                continue
            if self._size[a] < self._size[b]:
                a, b = b, a
            self._parent[b] = a
            self._size[a] += self._size[b]
            self._live -= 1
            merges += 1
            self._mark(a)
            ra = <size_t>a * nl
            rb = <size_t>b * nl
            for x in range(nl):
                t = self._trans[rb + x]
                if t < 0:
                    continue
                e = self._trans[ra + x]
                if e < 0:
                    self._trans[ra + x] = t
                else:
                    self._pending.push_back(pair[int, int](e, t))
        return merges

    def fold(self):
        return self._fold()

    cdef inline int _trace_flat(self, int v, int off, int length):
        cdef int k, t
        cdef int nl = self.nletters
        for k in range(length):
            t = self._trans[<size_t>v * nl + self._words[off + k]]
            if t < 0:
                return NO_VERTEX
            v = self._find(t)
        return v

    def trace(self, int v, word):
        cdef int x, t
        v = self.find(v)
        for x in word:
            if x < 0 or x >= self.nletters:
                raise IndexError(x)
            t = self._trans[<size_t>v * self.nletters + x]
            if t < 0:
                return NO_VERTEX
            v = self._find(t)
        return v

    def is_complete_single(self):
        if self._live != 1:
            return False
        cdef int v = self._find(0)
        cdef int x
        for x in range(self.nletters):
            if self._trans[<size_t>v * self.nletters + x] < 0:
                return False
        return True

    def set_relations(self, oriented):
        cdef int x, i
        self._words.clear()
        self._off.clear()
        self._len.clear()
        for x in range(self.nletters):
            self._by_first[x].clear()
        radius = 0
        for i, (r, s) in enumerate(oriented):
            r = tuple(r)
            s = tuple(s)
            if not r or not s:
                raise ValueError("relation sides must be nonempty")
            for side in (r, s):
                self._off.push_back(self._words.size())
                self._len.push_back(len(side))
                for x in side:
                    if x < 0 or x >= self.nletters:
                        raise IndexError(x)
                    self._words.push_back(x)
            self._by_first[r[0]].push_back(i)
            radius = max(radius, len(r), len(s))
        self._radius = radius
        self.mark_all_dirty()

    def mark_all_dirty(self):
        cdef int v
        for v in range(<int>self._parent.size()):
            self._mark(v)

    cdef void _clear_dirty(self):
        cdef int v
        for v in self._dirty:
            self._dirty_stamp[v] = 0
        self._dirty.clear()

    cdef vector[int] _candidates(self):
        cdef vector[int] out
        cdef vector[int] frontier, nxt
        cdef int v, r, x, t, step
        cdef int nl = self.nletters
        self._stamp += 1
        cdef int stamp = self._stamp
        for v in self._dirty:
            r = self._find(v)
            if self._seen[r] != stamp:
                self._seen[r] = stamp
                frontier.push_back(r)
                out.push_back(r)
        for step in range(self._radius):
            nxt.clear()
            for v in frontier:
                for x in range(nl):
                    t = self._trans[<size_t>v * nl + x]
                    if t >= 0:
                        t = self._find(t)
                        if self._seen[t] != stamp:
                            self._seen[t] = stamp
                            nxt.push_back(t)
                            out.push_back(t)
            frontier.swap(nxt)
            if frontier.empty():
                break
        return out

    cdef vector[int] _detect(self):
        # triples (v, u, rel) flattened
        cdef vector[int] found
        cdef vector[int] cand = self._candidates()
        cdef int v, x, i, u, k
        cdef int nl = self.nletters
        cdef size_t j
        # sort for reproducible instance order across kernels
        cand = _sorted(cand)
        for v in cand:
            for x in range(nl):
                if self._trans[<size_t>v * nl + x] < 0:
                    continue
                for j in range(self._by_first[x].size()):
                    i = self._by_first[x][j]
                    u = self._trace_flat(v, self._off[2 * i], self._len[2 * i])
                    if u < 0:
                        continue
                    if self._trace_flat(v, self._off[2 * i + 1], self._len[2 * i + 1]) != u:
                        found.push_back(v)
                        found.push_back(u)
                        found.push_back(i)
        return found

    def detect(self):
        cdef vector[int] found = self._detect()
        cdef size_t k
        return [(found[k], found[k + 1], found[k + 2]) for k in range(0, found.size(), 3)]

    cdef void _apply_flat(self, vector[int]& found):
        cdef size_t k
        cdef int v, u, i, p, q, j, off, length
        for k in range(0, found.size(), 3):
            v = found[k]
            u = found[k + 1]
            i = found[k + 2]
            off = self._off[2 * i + 1]
            length = self._len[2 * i + 1]
            p = v
            for j in range(length - 1):
                q = self._add_vertex()
                self._add_edge(p, self._words[off + j], q)
                p = q
            self._add_edge(p, self._words[off + length - 1], u)

    def apply(self, instances):
        cdef vector[int] found
        for v, u, i in instances:
            if i < 0 or i >= <int>self._len.size() // 2:
                raise IndexError(i)
            found.push_back(self.find(v))
            found.push_back(self.find(u))
            found.push_back(i)
        self._apply_flat(found)

    def expansion_round(self):
        cdef vector[int] found = self._detect()
        self._clear_dirty()
        self._apply_flat(found)
        self._fold()
        return found.size() // 3

    def export(self, int root):
        cdef int nl = self.nletters
        cdef int v, x, t, k, head = 0
        root = self.find(root)
        cdef vector[int] number
        number.resize(self._parent.size(), -1)
        cdef vector[int] order
        cdef vector[int] table
        number[root] = 0
        order.push_back(root)
        while head < <int>order.size():
            v = order[head]
            head += 1
            for x in range(nl):
                t = self._trans[<size_t>v * nl + x]
                if t < 0:
                    table.push_back(NO_VERTEX)
                    continue
                t = self._find(t)
                k = number[t]
                if k < 0:
                    k = order.size()
                    number[t] = k
                    order.push_back(t)
                table.push_back(k)
        return list(order), list(table)


cdef vector[int] _sorted(vector[int] v):
    sort(v.begin(), v.end())
    return v
