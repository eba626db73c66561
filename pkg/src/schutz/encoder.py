"""Tape semigroups, core semigroup and the amalgam presentation of a CM(2).

Letter names: blank ``z1``/``z2``, nonblank ``a1``/``a2``, ``t1``/``t2``, and
``<q>_1``/``<q>_2`` for a state ``q``. The core semigroup uses the bare state
names plus ``t``.

Relation tags: ``c`` commuting, ``t`` test, ``w`` right move, ``e`` left move,
``f`` finiteness, ``3`` amalgamation pairs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .alphabet import Alphabet, Word
from .machine import CounterMachine, MachineError, check
from .presentation import Presentation
from .stephen import DEFAULT_BUDGET, Budget, Verdict, eq


def blank(side: int) -> str:
    return f"z{side}"


def mark(side: int) -> str:
    return f"a{side}"


def tletter(side: int) -> str:
    return f"t{side}"


def state_letter(q: str, side: int) -> str:
    return f"{q}_{side}"


def tape_alphabet(m: CounterMachine, side: int) -> Alphabet:
    return Alphabet([blank(side), mark(side), tletter(side)] + [state_letter(q, side) for q in m.states])


def core_alphabet(m: CounterMachine) -> Alphabet:
    if "t" in m.states:
        raise MachineError("a state named 't' clashes with the core letter t")
    return Alphabet(list(m.states) + ["t"])


def _require_normalized(m: CounterMachine) -> None:
    if m.tapes != 2:
        raise MachineError("the encoding needs a 2-counter machine")
    if any(ins.action == "0" for ins in m.instructions):
        raise MachineError("the encoding rejects 0-move instructions; normalize first")
    rep = check(m)
    if not rep.normalized:
        raise MachineError(f"machine is not normalized: {rep.as_dict()}")


def encode_tape(m: CounterMachine, side: int, kill_t: bool = False) -> Presentation:
    """Presentation of the tape semigroup for tape ``side`` (1 or 2).

    ``kill_t=True`` lets the state-killing family ``q x = f`` (side 1) and
    ``x q = f`` (side 2) range over the t-letters too. That reading sends
    ``q t`` to zero, which breaks the embedding of the core semigroup and
    collapses every machine's ``w_{m,n}``; it is kept for comparison only.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    _require_normalized(m)
    X = tape_alphabet(m, side)
    P = Presentation(X)
    L = X.letter
    z, a, t, f = L(blank(side)), L(mark(side)), L(tletter(side)), L(state_letter(m.final, side))
    ti = t ^ 1

    for x in (a, a ^ 1, z, z ^ 1):
        P.add((t, x), (x, t), "c")

    for ins in m.instructions:
        if ins.tape != side:
            continue
        p, q = L(state_letter(ins.source, side)), L(state_letter(ins.target, side))
        if ins.action in ("a", "b"):
            s = a if ins.action == "a" else z
            if side == 1:
                P.add((s, p), (s, t, q, ti), "t")
            else:
                P.add((p, s), (t, q, ti, s), "t")
        elif ins.action == "+":
            for s in (z, a):
                if side == 1:
                    P.add((s, p), (s, t, a, q, ti), "w")
                else:
                    P.add((p, s), (t, q, a, ti, s), "w")
        elif ins.action == "-":
            for s in (z, a):
                if side == 1:
                    P.add((s, a, p), (s, t, q, ti), "e")
                else:
                    P.add((p, a, s), (t, q, ti, s), "e")

    letters = list(X.signed_letters())
    for x in letters:
        P.add((f, x), (f,), "f")
        P.add((x, f), (f,), "f")
    states = [L(state_letter(q, side)) for q in m.states]
    for q in states:
        for x in letters:
            if x == q ^ 1 or (not kill_t and x in (t, ti)):
                continue
            P.add((q, x) if side == 1 else (x, q), (f,), "f")
    for p in states:
        for q in states:
            if p != q:
                P.add((p ^ 1, q) if side == 1 else (p, q ^ 1), (f,), "f")
    P.add((a, z ^ 1), (f,), "f")
    P.add((z ^ 1, a), (f,), "f")
    return P


def encode_core(m: CounterMachine) -> Presentation:
    """Presentation of the core semigroup over the states plus ``t``."""
    X = core_alphabet(m)
    P = Presentation(X)
    f = X.letter(m.final)
    for x in X.signed_letters():
        P.add((f, x), (f,), "f")
        P.add((x, f), (f,), "f")
    states = [X.letter(q) for q in m.states]
    for p in states:
        for q in states:
            P.add((p, q), (f,), "f")
    for p in states:
        for q in states:
            if p != q:
                P.add((p, q ^ 1), (f,), "f")
                P.add((p ^ 1, q), (f,), "f")
    return P


def translate(word: Sequence[int], src: Alphabet, dst: Alphabet) -> Word:
    return tuple(dst.letter(src.letters[x >> 1]) ^ (x & 1) for x in word)


@dataclass
class EncodedAmalgam:
    machine: CounterMachine
    tapes: dict[int, Presentation]
    core: Presentation
    amalgam: Presentation
    kill_t: bool = False
    zero_letters: dict[int, str] = field(default_factory=dict)

    @property
    def alphabet(self) -> Alphabet:
        return self.amalgam.alphabet

    @property
    def zero(self) -> str:
        """The core zero ``f``."""
        return self.machine.final

    def letter(self, name: str) -> int:
        return self.amalgam.alphabet.letter(name)

    def state_letter(self, q: str, side: int) -> int:
        return self.letter(state_letter(q, side))

    def omega(self, side: int, word: Sequence[int]) -> Word:
        """Image of a core word in tape semigroup ``side``: ``q -> q_i``, ``t -> t_i``."""
        X_U = self.core.alphabet
        X_i = self.tapes[side].alphabet
        out = []
        for x in word:
            name = X_U.letters[x >> 1]
            target = tletter(side) if name == "t" else state_letter(name, side)
            out.append(X_i.letter(target) ^ (x & 1))
        return tuple(out)

    def word_mn(self, m: int, n: int) -> Word:
        return word_mn(self, m, n)


def encode_amalgam(m: CounterMachine, kill_t: bool = False) -> EncodedAmalgam:
    T1 = encode_tape(m, 1, kill_t)
    T2 = encode_tape(m, 2, kill_t)
    U = encode_core(m)
    X = T1.alphabet.union(T2.alphabet)
    P = Presentation(X)
    for T in (T1, T2):
        for (lhs, rhs), tag in zip(T.relations, T.tags):
            P.add(translate(lhs, T.alphabet, X), translate(rhs, T.alphabet, X), tag)
    for q in m.states:
        P.add((X.letter(state_letter(q, 1)),), (X.letter(state_letter(q, 2)),), "3")
    P.add((X.letter("t1"),), (X.letter("t2"),), "3")
    zeros = {1: state_letter(m.final, 1), 2: state_letter(m.final, 2)}
    return EncodedAmalgam(m, {1: T1, 2: T2}, U, P, kill_t, zeros)


def word_mn(enc: EncodedAmalgam, m: int, n: int) -> Word:
    """``z1 a1^m i_1 a2^n z2`` for the initial state ``i``."""
    if m < 0 or n < 0:
        raise ValueError("counters are nonnegative")
    L = enc.letter
    return (
        (L("z1"),)
        + (L("a1"),) * m
        + (L(state_letter(enc.machine.initial, 1)),)
        + (L("a2"),) * n
        + (L("z2"),)
    )


class Consistency(enum.Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class ProbeResult:
    verdict: Consistency
    core: Verdict
    tape1: Verdict
    tape2: Verdict

    @property
    def answers(self) -> tuple[Verdict, Verdict, Verdict]:
        return (self.core, self.tape1, self.tape2)


def embedding_probe(enc: EncodedAmalgam, u: Sequence[int], v: Sequence[int], b: Budget = DEFAULT_BUDGET) -> ProbeResult:
    """Compare ``u = v`` in the core with ``omega_i(u) = omega_i(v)`` in each tape semigroup."""
    ru = eq(enc.core, u, v, b)
    r1 = eq(enc.tapes[1], enc.omega(1, u), enc.omega(1, v), b)
    r2 = eq(enc.tapes[2], enc.omega(2, u), enc.omega(2, v), b)
    resolved = {r for r in (ru, r1, r2) if r is not Verdict.UNKNOWN}
    if len(resolved) > 1:
        verdict = Consistency.INCONSISTENT
    elif Verdict.UNKNOWN in (ru, r1, r2):
        verdict = Consistency.UNRESOLVED
    else:
        verdict = Consistency.CONSISTENT
    return ProbeResult(verdict, ru, r1, r2)
