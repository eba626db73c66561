"""Stephen's procedure: expansion rounds, budgeted closure, word-problem semidecision."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .alphabet import Alphabet
from .automaton import (
    InverseAutomaton,
    PendingAutomaton,
    canonical_form,
    extract,
    is_complete_one_vertex,
    load,
)
from .kernel import NO_VERTEX, Workspace
from .munn import munn_tree
from .presentation import Presentation


@dataclass(frozen=True)
class Budget:
    max_rounds: int = 1000
    max_vertices: int = 100_000

    def __post_init__(self) -> None:
        if self.max_rounds <= 0 or self.max_vertices <= 0:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = Budget()


class Status(enum.Enum):
    CLOSED = "closed"
    BUDGET_EXHAUSTED = "budget_exhausted"


class Verdict(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClosureOutcome:
    status: Status
    automaton: InverseAutomaton
    rounds: int
    vertices: int

    @property
    def closed(self) -> bool:
        return self.status is Status.CLOSED

    @property
    def collapsed(self) -> bool:
        """Whether the closure is the one-vertex complete automaton."""
        return is_complete_one_vertex(self.automaton)


class NotAZeroError(ValueError):
    """The letter given as zero does not close to the complete one-vertex automaton."""


class Saturation:
    """An in-progress closure of an automaton under a presentation.

    Each ``step`` is one round: all instances are detected against the
    current automaton, grafted, then folded. ``rounds`` counts rounds that
    applied at least one instance.
    """

    def __init__(self, presentation: Presentation, automaton: InverseAutomaton, budget: Budget = DEFAULT_BUDGET):
        if automaton.alphabet != presentation.alphabet:
            raise ValueError("automaton and presentation use different alphabets")
        self.presentation = presentation
        self.budget = budget
        self.ws = Workspace(presentation.alphabet.size)
        ids = load(self.ws, automaton)
        self.ws.fold()
        self._initial = ids[automaton.initial]
        self._final = ids[automaton.final]
        self.ws.set_relations(presentation.oriented())
        self.rounds = 0
        self.status: Status | None = None
        if self.collapsed:
            self.status = Status.CLOSED

    @property
    def done(self) -> bool:
        return self.status is not None

    @property
    def closed(self) -> bool:
        return self.status is Status.CLOSED

    @property
    def vertices(self) -> int:
        return self.ws.live

    @property
    def collapsed(self) -> bool:
        return self.ws.is_complete_single()

    def step(self) -> int:
        """Run one round; returns the number of instances applied."""
        if self.done:
            return 0
        applied = self.ws.expansion_round()
        if applied == 0 or self.collapsed:
            self.status = Status.CLOSED
            if applied:
                self.rounds += 1
            return applied
        self.rounds += 1
        if self.rounds >= self.budget.max_rounds or self.ws.live > self.budget.max_vertices:
            # a closure that finished exactly at the limit is still closed
            self.status = Status.BUDGET_EXHAUSTED if self.ws.detect() else Status.CLOSED
        return applied

    def run(self) -> ClosureOutcome:
        while not self.done:
            self.step()
        return self.outcome()

    def accepts(self, word: Sequence[int]) -> bool:
        return self.ws.trace(self._initial, word) == self.ws.find(self._final)

    @property
    def automaton(self) -> InverseAutomaton:
        return extract(self.ws, self.presentation.alphabet, self._initial, self._final)

    def outcome(self) -> ClosureOutcome:
        status = self.status or Status.BUDGET_EXHAUSTED
        return ClosureOutcome(status, self.automaton, self.rounds, self.ws.live)


def expansion_round(p: Presentation, a: InverseAutomaton) -> tuple[PendingAutomaton, int]:
    """All R-expansions of ``a``, detected simultaneously, not yet folded."""
    ws = Workspace(p.alphabet.size)
    load(ws, a)
    oriented = p.oriented()
    ws.set_relations(oriented)
    instances = ws.detect()
    pending = PendingAutomaton.from_automaton(a)
    for v, u, i in instances:
        pending.add_path(v, oriented[i][1], u)
    return pending, len(instances)


def close(p: Presentation, a: InverseAutomaton, b: Budget = DEFAULT_BUDGET) -> ClosureOutcome:
    return Saturation(p, a, b).run()


def schutzenberger(p: Presentation, w: Sequence[int], b: Budget = DEFAULT_BUDGET) -> ClosureOutcome:
    return close(p, munn_tree(p.alphabet, w), b)


def iterates(p: Presentation, a: InverseAutomaton, max_rounds: int = 50) -> Iterator[InverseAutomaton]:
    """The Stephen sequence started at ``a``, one folded automaton per round."""
    sat = Saturation(p, a, Budget(max_rounds=max_rounds))
    yield sat.automaton
    while not sat.done:
        if sat.step():
            yield sat.automaton


def eq(p: Presentation, u: Sequence[int], v: Sequence[int], b: Budget = DEFAULT_BUDGET) -> Verdict:
    """Semidecide ``u = v`` by growing both Schützenberger automata in lockstep."""
    su = Saturation(p, munn_tree(p.alphabet, u), b)
    sv = Saturation(p, munn_tree(p.alphabet, v), b)
    while True:
        if sv.accepts(u) and su.accepts(v):
            return Verdict.EQUAL
        # a finished closure that rejects the other word refutes equality
        if (su.closed and not su.accepts(v)) or (sv.closed and not sv.accepts(u)):
            if su.closed and sv.closed:
                assert canonical_form(su.automaton) != canonical_form(sv.automaton)
            return Verdict.NOT_EQUAL
        if su.done and sv.done:
            return Verdict.UNKNOWN
        su.step()
        sv.step()


def _letter(alphabet: Alphabet, letter: int | str) -> int:
    return alphabet.letter(letter) if isinstance(letter, str) else letter


def is_zero(p: Presentation, w: Sequence[int], zero_letter: int | str, b: Budget = DEFAULT_BUDGET) -> bool | None:
    """True iff ``w`` equals the zero; None when the budget runs out first.

    Raises ``NotAZeroError`` when the closure of ``zero_letter`` itself does
    not collapse to the complete one-vertex automaton.
    """
    z = _letter(p.alphabet, zero_letter)
    zero = Saturation(p, munn_tree(p.alphabet, (z,)), b).run()
    if not zero.collapsed:
        raise NotAZeroError(f"{p.alphabet.name(z)} does not represent a zero of this presentation")
    sat = Saturation(p, munn_tree(p.alphabet, w), b)
    while not sat.done:
        sat.step()
    if sat.collapsed:
        return True
    return False if sat.closed else None


def sigma(word: Iterable[int], letters: Iterable[int]) -> int:
    """Homomorphism counting +1 per letter of ``letters``, -1 per inverse."""
    ys = set(letters)
    total = 0
    for x in word:
        if x in ys:
            total += 1
        elif x ^ 1 in ys:
            total -= 1
    return total


def check_potential(a: InverseAutomaton, letters: Iterable[int | str]) -> list[int] | None:
    """Heights with ``h(target) - h(source) = sigma(label)`` on every edge.

    Returns None when some loop has nonzero ``sigma``. Heights are relative
    to the initial vertex, which gets 0.
    """
    ys = {_letter(a.alphabet, y) for y in letters}
    weight = [0] * a.alphabet.size
    for y in ys:
        weight[y] = 1
        weight[y ^ 1] = -1
    height: list[int | None] = [None] * a.n_vertices
    height[a.initial] = 0
    queue = deque([a.initial])
    while queue:
        v = queue.popleft()
        for x, t in enumerate(a.table[v]):
            if t == NO_VERTEX:
                continue
            h = height[v] + weight[x]
            if height[t] is None:
                height[t] = h
                queue.append(t)
            elif height[t] != h:
                return None
    return height  # type: ignore[return-value]


__all__ = [
    "Budget",
    "ClosureOutcome",
    "DEFAULT_BUDGET",
    "NotAZeroError",
    "Saturation",
    "Status",
    "Verdict",
    "check_potential",
    "close",
    "eq",
    "expansion_round",
    "is_zero",
    "iterates",
    "schutzenberger",
    "sigma",
]
