"""k-counter machines: semantics, structural checks, normalization.

Actions are ``'a'`` and ``'b'`` (tests for a nonblank / blank square, ``'b'``
standing for the blank symbol) and the moves ``'+'``, ``'-'``, ``'0'``.
Head positions start at 0, the leftmost (blank) square.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

TESTS = ("a", "b")
MOVES = ("+", "-", "0")
ACTIONS = TESTS + MOVES

_ACTION_CODE = {"a": "a", "b": "b", "+": "p", "-": "m", "0": "z"}


class Instruction(NamedTuple):
    source: str
    tape: int
    action: str
    target: str

    def __str__(self) -> str:
        return f"({self.source},{self.tape},{self.action},{self.target})"


class InstantDesc(NamedTuple):
    state: str
    counters: tuple[int, ...]

    def __str__(self) -> str:
        return "(" + ",".join([self.state, *map(str, self.counters)]) + ")"


class MachineError(ValueError):
    pass


@dataclass(frozen=True)
class CounterMachine:
    states: tuple[str, ...]
    instructions: tuple[Instruction, ...]
    initial: str
    final: str
    tapes: int = 2
    # dummy state -> the instruction(s) it was introduced for
    origin: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "instructions", tuple(Instruction(*ins) for ins in self.instructions))
        if not self.states:
            raise MachineError("a machine needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise MachineError("duplicate state names")
        names = set(self.states)
        for st in (self.initial, self.final):
            if st not in names:
                raise MachineError(f"unknown state {st!r}")
        if self.tapes < 1:
            raise MachineError("tape count must be positive")
        if len(set(self.instructions)) != len(self.instructions):
            raise MachineError("duplicate instructions")
        for ins in self.instructions:
            if ins.source not in names or ins.target not in names:
                raise MachineError(f"instruction {ins} uses an unknown state")
            if not 1 <= ins.tape <= self.tapes:
                raise MachineError(f"instruction {ins} uses tape {ins.tape}")
            if ins.action not in ACTIONS:
                raise MachineError(f"instruction {ins} has unknown action {ins.action!r}")

    def start(self, *counters: int) -> InstantDesc:
        if len(counters) != self.tapes:
            raise MachineError(f"expected {self.tapes} counters")
        if any(c < 0 for c in counters):
            raise MachineError("counters are nonnegative")
        return InstantDesc(self.initial, tuple(counters))

    def outgoing(self, state: str) -> list[Instruction]:
        return [ins for ins in self.instructions if ins.source == state]

    def incoming(self, state: str) -> list[Instruction]:
        return [ins for ins in self.instructions if ins.target == state]

    # -- text format ------------------------------------------------------
    def format(self) -> str:
        lines = [
            "states " + " ".join(self.states),
            f"initial {self.initial}",
            f"final {self.final}",
            f"tapes {self.tapes}",
        ]
        lines += [f"ins {i.source} {i.tape} {i.action} {i.target}" for i in self.instructions]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CounterMachine":
        from .presentation import ParseError

        fields: dict[str, object] = {}
        instructions = []
        for lineno, raw in enumerate(text.split("\n"), 1):
            tokens = raw.partition("#")[0].split()
            if not tokens:
                continue
            head, args = tokens[0], tokens[1:]
            if head == "ins":
                if len(args) != 4:
                    raise ParseError("expected 'ins <state> <tape> <action> <state>'", lineno)
                try:
                    tape = int(args[1])
                except ValueError:
                    raise ParseError(f"bad tape index {args[1]!r}", lineno) from None
                if args[2] not in ACTIONS:
                    raise ParseError(f"bad action {args[2]!r}", lineno)
                instructions.append(Instruction(args[0], tape, args[2], args[3]))
            elif head in ("states", "initial", "final", "tapes"):
                if head in fields:
                    raise ParseError(f"{head!r} given twice", lineno)
                if head == "states":
                    if not args:
                        raise ParseError("empty state list", lineno)
                    fields[head] = tuple(args)
                elif len(args) != 1:
                    raise ParseError(f"{head!r} takes one argument", lineno)
                elif head == "tapes":
                    try:
                        fields[head] = int(args[0])
                    except ValueError:
                        raise ParseError(f"bad tape count {args[0]!r}", lineno) from None
                else:
                    fields[head] = args[0]
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
        for key in ("states", "initial", "final"):
            if key not in fields:
                raise ParseError(f"missing {key!r}")
        try:
            return cls(
                fields["states"],  # type: ignore[arg-type]
                tuple(instructions),
                fields["initial"],  # type: ignore[arg-type]
                fields["final"],  # type: ignore[arg-type]
                fields.get("tapes", 2),  # type: ignore[arg-type]
            )
        except MachineError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def read(cls, path) -> "CounterMachine":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())


def machine(states: str | Iterable[str], instructions: Iterable[tuple], initial: str = "i", final: str = "f", tapes: int = 2) -> CounterMachine:
    """Shorthand constructor: ``machine("i f", [("i", 1, "+", "f")])``."""
    if isinstance(states, str):
        states = states.split()
    return CounterMachine(tuple(states), tuple(Instruction(*i) for i in instructions), initial, final, tapes)


# -- semantics -------------------------------------------------------------

def _fires(ins: Instruction, n: int) -> int | None:
    """New counter value if ``ins`` can fire with head at ``n``."""
    act = ins.action
    if act == "b":
        return n if n == 0 else None
    if act == "a":
        return n if n > 0 else None
    if act == "-":
        return n - 1 if n >= 1 else None
    if act == "+":
        return n + 1
    return n


def step(m: CounterMachine, d: InstantDesc) -> list[InstantDesc]:
    """All IDs that immediately follow ``d``."""
    out = []
    for ins in m.instructions:
        if ins.source != d.state:
            continue
        new = _fires(ins, d.counters[ins.tape - 1])
        if new is None:
            continue
        counters = list(d.counters)
        counters[ins.tape - 1] = new
        out.append(InstantDesc(ins.target, tuple(counters)))
    return out


class RunVerdict(enum.Enum):
    ACCEPTED = "accepted"
    HALTED = "halted"
    STEP_LIMIT = "step_limit"
    NONDET_BRANCH = "nondet_branch"


@dataclass(frozen=True)
class RunResult:
    verdict: RunVerdict
    trace: tuple[InstantDesc, ...]

    @property
    def steps(self) -> int:
        return len(self.trace) - 1

    @property
    def accepted(self) -> bool:
        return self.verdict is RunVerdict.ACCEPTED


def run(m: CounterMachine, start: InstantDesc | Sequence[int], max_steps: int) -> RunResult:
    """Follow the unique computation from ``start`` for at most ``max_steps``."""
    d = start if isinstance(start, InstantDesc) else m.start(*start)
    trace = [d]
    while True:
        if d.state == m.final:
            return RunResult(RunVerdict.ACCEPTED, tuple(trace))
        nxt = step(m, d)
        if not nxt:
            return RunResult(RunVerdict.HALTED, tuple(trace))
        if len(nxt) > 1:
            return RunResult(RunVerdict.NONDET_BRANCH, tuple(trace))
        if len(trace) > max_steps:
            return RunResult(RunVerdict.STEP_LIMIT, tuple(trace))
        d = nxt[0]
        trace.append(d)


# -- structural checks -----------------------------------------------------

def _overlap(j1: int, x1: str, j2: int, x2: str) -> bool:
    return j1 != j2 or x1 == x2 or x1 in MOVES or x2 in MOVES


def overlap_domain(a: Instruction, b: Instruction) -> bool:
    return a.source == b.source and _overlap(a.tape, a.action, b.tape, b.action)


def overlap_range(a: Instruction, b: Instruction) -> bool:
    return a.target == b.target and _overlap(a.tape, a.action, b.tape, b.action)


@dataclass(frozen=True)
class CheckReport:
    deterministic: bool
    reversible: bool
    alternating: bool
    has_zero_moves: bool

    @property
    def normalized(self) -> bool:
        return self.deterministic and self.reversible and self.alternating and not self.has_zero_moves

    def as_dict(self) -> dict[str, bool]:
        return {
            "deterministic": self.deterministic,
            "reversible": self.reversible,
            "alternating": self.alternating,
            "has_zero_moves": self.has_zero_moves,
            "normalized": self.normalized,
        }


def alternation_violations(m: CounterMachine) -> list[tuple[Instruction, Instruction]]:
    """Pairs of distinct instructions ``(q,i,h,q'), (q',j,h',q'')`` with ``j != 3-i``."""
    bad = []
    for first in m.instructions:
        for second in m.outgoing(first.target):
            if second != first and second.tape != 3 - first.tape:
                bad.append((first, second))
    return bad


def check(m: CounterMachine) -> CheckReport:
    pairs = list(itertools.combinations(m.instructions, 2))
    return CheckReport(
        deterministic=not any(overlap_domain(a, b) for a, b in pairs),
        reversible=not any(overlap_range(a, b) for a, b in pairs),
        alternating=not alternation_violations(m),
        has_zero_moves=any(ins.action == "0" for ins in m.instructions),
    )


# -- normalization -----------------------------------------------------------

def _dummy_name(ins: Instruction, taken: set[str]) -> str:
    base = f"{ins.source}_{ins.tape}{_ACTION_CODE[ins.action]}_{ins.target}"
    name = base
    k = 1
    while name in taken:
        k += 1
        name = f"{base}_{k}"
    return name


def make_alternating(m: CounterMachine, max_iterations: int = 10_000) -> CounterMachine:
    """Insert dummy states until consecutive instructions alternate tapes.

    Whenever ``(p,i,h,q)`` is followed by ``(q,i,x,r)``, every instruction
    leaving ``q`` (one move, or a test pair) is rerouted through a fresh
    dummy state entered by ``(q,3-i,0,dummy)``.
    """
    if m.tapes != 2:
        raise MachineError("make_alternating needs a 2-counter machine")
    rep = check(m)
    if not (rep.deterministic and rep.reversible):
        raise MachineError("make_alternating needs a deterministic reversible machine")
    states = list(m.states)
    instructions = list(m.instructions)
    origin = dict(m.origin)
    current = m
    for _ in range(max_iterations):
        bad = alternation_violations(current)
        if not bad:
            return current
        q = bad[0][1].source
        tape = bad[0][1].tape
        leaving = [ins for ins in instructions if ins.source == q]
        dummy = _dummy_name(min(leaving), set(states))
        states.append(dummy)
        origin[dummy] = tuple(sorted(leaving))
        instructions = [ins for ins in instructions if ins.source != q]
        instructions.append(Instruction(q, 3 - tape, "0", dummy))
        instructions += [Instruction(dummy, ins.tape, ins.action, ins.target) for ins in leaving]
        current = CounterMachine(tuple(states), tuple(instructions), m.initial, m.final, m.tapes, origin)
    raise MachineError(f"make_alternating did not converge in {max_iterations} iterations")


def remove_zero_moves(m: CounterMachine) -> CounterMachine:
    """Replace each ``(p,i,0,q)`` by the test pair ``(p,i,a,q), (p,i,b,q)``."""
    out: list[Instruction] = []
    for ins in m.instructions:
        if ins.action == "0":
            out.append(ins._replace(action="a"))
            out.append(ins._replace(action="b"))
        else:
            out.append(ins)
    return CounterMachine(m.states, tuple(dict.fromkeys(out)), m.initial, m.final, m.tapes, dict(m.origin))


def normalize(m: CounterMachine, max_passes: int = 8) -> CounterMachine:
    """``remove_zero_moves(make_alternating(m))``, repeated until normalized.

    One pass is enough unless a 0-move loops on its own state: splitting it
    yields a test pair that reads the same tape twice in a row.
    """
    out = m
    for _ in range(max_passes):
        out = remove_zero_moves(make_alternating(out))
        rep = check(out)
        if rep.normalized:
            return out
    raise MachineError(f"normalization failed: {rep}")


def is_dummy(m: CounterMachine, state: str) -> bool:
    return state in m.origin


def simulates(
    m: CounterMachine,
    m2: CounterMachine,
    samples: Iterable[tuple[int, int]],
    max_steps: int,
) -> tuple[bool, str | None]:
    """Check that ``m2`` (a normalization of ``m``) tracks ``m`` step by step.

    The ``m2`` trace with dummy-state IDs deleted must agree with the ``m``
    trace on their common prefix, and terminal verdicts must agree when both
    runs resolve. Returns ``(ok, counterexample)``.
    """
    dummies = set(m2.origin) - set(m.origin)
    resolved = (RunVerdict.ACCEPTED, RunVerdict.HALTED)
    for counters in samples:
        r1 = run(m, counters, max_steps)
        # each original step costs at most two steps of m2
        r2 = run(m2, counters, 2 * max_steps + 1)
        projected = [d for d in r2.trace if d.state not in dummies]
        common = min(len(projected), len(r1.trace))
        for k in range(common):
            if projected[k] != r1.trace[k]:
                return False, f"start {counters}: step {k}: {r1.trace[k]} vs {projected[k]}"
        if r1.verdict in resolved:
            if r1.verdict != r2.verdict or len(projected) != len(r1.trace):
                return False, f"start {counters}: {r1.verdict.value} vs {r2.verdict.value}"
        elif r2.verdict in resolved and len(projected) < len(r1.trace):
            return False, f"start {counters}: normalized machine {r2.verdict.value} early"
    return True, None


def random_machine(
    rng: random.Random,
    max_states: int = 6,
    max_instructions: int = 8,
    actions: Sequence[str] = ACTIONS,
    attempts: int = 60,
) -> CounterMachine:
    """Random deterministic reversible CM(2) grown instruction by instruction."""
    n = rng.randint(2, max_states)
    states = ["i", "f"] + [f"s{k}" for k in range(n - 2)]
    chosen: list[Instruction] = []
    limit = rng.randint(1, max_instructions)
    for _ in range(attempts):
        if len(chosen) >= limit:
            break
        ins = Instruction(
            rng.choice(states[:1] + states[2:] if n > 2 else states[:1]),
            rng.randint(1, 2),
            rng.choice(actions),
            rng.choice(states),
        )
        if ins in chosen:
            continue
        if any(overlap_domain(ins, o) or overlap_range(ins, o) for o in chosen):
            continue
        chosen.append(ins)
    return CounterMachine(tuple(states), tuple(chosen), "i", "f")
