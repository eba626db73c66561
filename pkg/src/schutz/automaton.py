"""Inverse X-automata: storage, folding, tracing, canonical forms, DOT export."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabet import Alphabet
from .kernel import NO_VERTEX, Workspace


@dataclass(frozen=True)
class InverseAutomaton:
    """Birooted, involutive, deterministic, connected edge-labelled graph.

    ``table[v][x]`` is the x-target of vertex ``v`` or ``NO_VERTEX``; both
    orientations of every edge are stored.
    """

    alphabet: Alphabet
    table: tuple[tuple[int, ...], ...]
    initial: int = 0
    final: int = 0

    @property
    def n_vertices(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def target(self, v: int, x: int) -> int:
        return self.table[v][x]

    def edges(self, positive_only: bool = True) -> list[tuple[int, int, int]]:
        out = []
        for v, row in enumerate(self.table):
            for x, t in enumerate(row):
                if t != NO_VERTEX and (not positive_only or not x & 1):
                    out.append((v, x, t))
        return out

    @property
    def n_edges(self) -> int:
        """Number of positive-labelled edges."""
        return sum(1 for row in self.table for x in range(0, len(row), 2) if row[x] != NO_VERTEX)

    def accepts(self, word: Sequence[int]) -> bool:
        return trace(self, self.initial, word) == self.final

    def validate(self) -> None:
        """Raise ``ValueError`` unless the automaton is a valid inverse automaton."""
        n, size = len(self.table), self.alphabet.size
        if not n:
            raise ValueError("automaton has no vertices")
        if not (0 <= self.initial < n and 0 <= self.final < n):
            raise ValueError("root out of range")
        for v, row in enumerate(self.table):
            if len(row) != size:
                raise ValueError(f"row {v} has wrong width")
            for x, t in enumerate(row):
                if t == NO_VERTEX:
                    continue
                if not 0 <= t < n or self.table[t][x ^ 1] != v:
                    raise ValueError(f"edge ({v}, {self.alphabet.name(x)}, {t}) breaks involution")
        if len(_bfs_order(self.table, self.initial)) != n:
            raise ValueError("automaton is not connected")

    def with_roots(self, initial: int, final: int) -> "InverseAutomaton":
        return InverseAutomaton(self.alphabet, self.table, initial, final)


@dataclass
class PendingAutomaton:
    """Involutive graph that may be nondeterministic; staging area before folding."""

    alphabet: Alphabet
    n_vertices: int = 1
    edges: list[tuple[int, int, int]] = field(default_factory=list)
    initial: int = 0
    final: int = 0

    def add_vertex(self) -> int:
        self.n_vertices += 1
        return self.n_vertices - 1

    def add_edge(self, p: int, x: int, q: int) -> None:
        """Add ``p -x-> q``; the inverse edge is implied."""
        if not (0 <= p < self.n_vertices and 0 <= q < self.n_vertices):
            raise ValueError("vertex out of range")
        self.edges.append((p, x, q))

    def add_path(self, p: int, word: Sequence[int], q: int | None = None) -> int:
        """Add a fresh path reading ``word`` from ``p`` (ending at ``q`` if given)."""
        for k, x in enumerate(word):
            last = k == len(word) - 1
            nxt = q if (last and q is not None) else self.add_vertex()
            self.add_edge(p, x, nxt)
            p = nxt
        return p

    def is_deterministic(self) -> bool:
        seen: dict[tuple[int, int], int] = {}
        for p, x, q in self.edges:
            for key, t in (((p, x), q), ((q, x ^ 1), p)):
                if seen.setdefault(key, t) != t:
                    return False
        return True

    @classmethod
    def linear(cls, alphabet: Alphabet, word: Sequence[int]) -> "PendingAutomaton":
        """The linear automaton ``-> o -word-> o ->``."""
        a = cls(alphabet)
        a.final = a.add_path(0, word)
        return a

    @classmethod
    def from_automaton(cls, a: InverseAutomaton) -> "PendingAutomaton":
        return cls(a.alphabet, a.n_vertices, a.edges(), a.initial, a.final)


def load(ws: Workspace, a: InverseAutomaton) -> list[int]:
    """Copy ``a`` into a kernel workspace; returns the vertex id map."""
    first = ws.add_vertices(a.n_vertices)
    for v, x, t in a.edges():
        ws.add_edge(first + v, x, first + t)
    return [first + v for v in range(a.n_vertices)]


def extract(ws: Workspace, alphabet: Alphabet, initial: int, final: int) -> InverseAutomaton:
    """Read the component of ``initial`` out of a folded workspace, BFS-numbered."""
    order, flat = ws.export(initial)
    size = alphabet.size
    table = tuple(tuple(flat[k * size : (k + 1) * size]) for k in range(len(order)))
    number = {v: k for k, v in enumerate(order)}
    return InverseAutomaton(alphabet, table, 0, number[ws.find(final)])


def fold(a: PendingAutomaton | InverseAutomaton, rng: random.Random | None = None) -> InverseAutomaton:
    """Complete folding.

    With ``rng`` the edges are inserted in a shuffled order; the result is
    independent of the order up to isomorphism.
    """
    if isinstance(a, InverseAutomaton):
        a = PendingAutomaton.from_automaton(a)
    ws = Workspace(a.alphabet.size)
    ws.add_vertices(a.n_vertices)
    edges = list(a.edges)
    if rng is not None:
        rng.shuffle(edges)
    for p, x, q in edges:
        ws.add_edge(p, x, q)
    ws.fold()
    return extract(ws, a.alphabet, a.initial, a.final)


def trace(a: InverseAutomaton, v: int, word: Iterable[int]) -> int | None:
    """End vertex of the path reading ``word`` from ``v``, or None."""
    table = a.table
    for x in word:
        v = table[v][x]
        if v == NO_VERTEX:
            return None
    return v


def _bfs_order(table, root: int) -> list[int]:
    number = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for t in table[v]:
            if t != NO_VERTEX and t not in number:
                number[t] = len(order)
                order.append(t)
                queue.append(t)
    return order


CanonicalForm = tuple


def canonical_form(a: InverseAutomaton | PendingAutomaton) -> CanonicalForm:
    """Storage-independent encoding ``(alphabet, n, edges, final)``.

    Vertices are renumbered in BFS order from the initial vertex, expanding
    letters in the fixed order of the doubled alphabet.
    """
    if isinstance(a, PendingAutomaton):
        if not a.is_deterministic():
            raise ValueError("canonical_form needs a folded (deterministic) automaton")
        a = fold(a)
    order = _bfs_order(a.table, a.initial)
    if len(order) != a.n_vertices:
        raise ValueError("automaton is not connected")
    number = {v: k for k, v in enumerate(order)}
    edges = tuple(
        (number[v], x, number[t])
        for v in order
        for x, t in enumerate(a.table[v])
        if t != NO_VERTEX and not x & 1
    )
    return (a.alphabet.letters, len(order), edges, number[a.final])


def iso(a: InverseAutomaton, b: InverseAutomaton) -> bool:
    return canonical_form(a) == canonical_form(b)


def complete_one_vertex(alphabet: Alphabet) -> InverseAutomaton:
    """The one-vertex automaton with a loop for every letter."""
    return InverseAutomaton(alphabet, (tuple([0] * alphabet.size),), 0, 0)


def is_complete_one_vertex(a: InverseAutomaton) -> bool:
    return a.n_vertices == 1 and all(t == 0 for t in a.table[0])


def _dot_id(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def export_dot(
    a: InverseAutomaton,
    name: str = "automaton",
    vertex_labels: Sequence[str] | None = None,
    ranks: Sequence[Sequence[int]] | None = None,
) -> str:
    """GraphViz DOT, positive edges only, numbered by ``canonical_form``.

    ``vertex_labels`` and ``ranks`` refer to the automaton's own vertex ids;
    each entry of ``ranks`` is emitted as a ``rank=same`` group.
    """
    order = _bfs_order(a.table, a.initial)
    number = {v: k for k, v in enumerate(order)}
    label = (lambda v: vertex_labels[v]) if vertex_labels else (lambda v: str(number[v]))
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=LR;"]
    for v in order:
        attrs = ["shape=doublecircle" if v == a.initial else "shape=circle", f"label={_dot_id(label(v))}"]
        if v == a.final:
            attrs.append("style=filled, fillcolor=lightgrey")
        lines.append(f"  v{number[v]} [{', '.join(attrs)}];")
    for v in order:
        for x in range(0, a.alphabet.size, 2):
            t = a.table[v][x]
            if t != NO_VERTEX:
                lines.append(f"  v{number[v]} -> v{number[t]} [label={_dot_id(a.alphabet.name(x))}];")
    for group in ranks or ():
        members = " ".join(f"v{number[v]};" for v in group if v in number)
        lines.append(f"  {{ rank=same; {members} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
