"""Independent oracles. None of these import the graph or closure code."""

from __future__ import annotations

import itertools
from collections import Counter

# -- free inverse semigroup --------------------------------------------------
# Words are tuples over 0..2n-1 with inverse x ^ 1, same convention as the
# package, but nothing below relies on the package.


def inv(word):
    return tuple(x ^ 1 for x in reversed(word))


def all_words(nletters: int, max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(range(2 * nletters), repeat=n)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        root = x
        while self.parent.get(root, root) != root:
            root = self.parent[root]
        while self.parent.get(x, x) != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def vagner_classes(nletters: int, max_len: int, cap: int) -> dict:
    """Class representative of every word of length <= ``max_len``.

    Two words are joined when a chain of Vagner moves ``u u' u <-> u`` and
    ``u u' v v' <-> v v' u u'`` connects them without ever exceeding length
    ``cap``. Joined words are always equal in FIS; for a large enough cap
    the converse holds too.
    """
    uf = _UnionFind()
    for w in all_words(nletters, cap):
        n = len(w)
        for i in range(n):
            for k in range(1, (n - i) // 3 + 1):
                u = w[i : i + k]
                if w[i + k : i + 2 * k] == inv(u) and w[i + 2 * k : i + 3 * k] == u:
                    uf.union(w, w[:i] + u + w[i + 3 * k :])
            for k in range(1, (n - i) // 2 + 1):
                u = w[i : i + k]
                if w[i + k : i + 2 * k] != inv(u):
                    continue
                rest = n - i - 2 * k
                for l in range(1, rest // 2 + 1):
                    j = i + 2 * k
                    v = w[j : j + l]
                    if w[j + l : j + 2 * l] == inv(v):
                        uf.union(w, w[:i] + v + inv(v) + u + inv(u) + w[j + 2 * l :])
    return {w: uf.find(w) for w in all_words(nletters, max_len)}


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def scheiblich_key(word):
    """(prefix-closed set of reduced prefixes, reduced word): a complete FIS invariant."""
    return frozenset(free_reduce(word[:k]) for k in range(len(word) + 1)), free_reduce(word)


# -- relation counts of the encoding ------------------------------------------


def tape_relation_count(m, side: int, kill_t: bool = False) -> dict:
    """Relations per tag for one tape presentation, counted from the machine alone."""
    q = len(m.states)
    x_tilde = 2 * (3 + q)
    ins = [i for i in m.instructions if i.tape == side]
    kinds = Counter(i.action for i in ins)
    kill = q * (x_tilde - 1) if kill_t else q * (x_tilde - 3)
    return {
        "c": 4,
        "t": kinds["a"] + kinds["b"],
        "w": 2 * kinds["+"],
        "e": 2 * kinds["-"],
        "f": 2 * x_tilde + kill + q * (q - 1) + 2,
    }


def core_relation_count(m) -> int:
    q = len(m.states)
    return 2 * 2 * (q + 1) + q * q + 2 * q * (q - 1)


# -- grids --------------------------------------------------------------------


def grid_vertex_count(trace) -> int:
    """(k+1)(m' + n' + 4) from a list of (state, (m, n)) pairs."""
    mm = max(c[0] for _, c in trace)
    nn = max(c[1] for _, c in trace)
    return len(trace) * (mm + nn + 4)


def simulate(instructions, initial, counters, steps):
    """Plain CM(2) simulator over (source, tape, action, target) tuples."""
    state, c = initial, list(counters)
    trace = [(state, tuple(c))]
    for _ in range(steps):
        nxt = None
        for src, tape, act, dst in instructions:
            if src != state:
                continue
            h = c[tape - 1]
            if act == "a" and h > 0 or act == "b" and h == 0 or act in "+0" or act == "-" and h > 0:
                if nxt is not None:
                    raise ValueError("nondeterministic")
                d = {"+": 1, "-": -1}.get(act, 0)
                nxt = (dst, tape, d)
        if nxt is None:
            break
        state, tape, d = nxt
        c[tape - 1] += d
        trace.append((state, tuple(c)))
    return trace
