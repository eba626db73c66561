"""Grid automata B^(k)_{m,n}: the first k machine steps drawn as a two-ladder graph.

Row ``i`` holds the configuration after ``i`` steps: a tape-1 ladder
``c[i][0] -z1-> c[i][1] -a1-> ... `` and a tape-2 ladder read right to left
ending at ``d[i][0]``, joined by the state edge ``c[i][m_i+1] -> d[i][n_i+1]``
labelled by the state letters of both tapes. Consecutive rows are joined by
``t1``/``t2`` edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alphabet import Alphabet
from .automaton import InverseAutomaton, export_dot, extract, iso, load
from .encoder import EncodedAmalgam, encode_amalgam, state_letter
from .kernel import NO_VERTEX, Workspace
from .machine import CounterMachine, InstantDesc, RunVerdict, check, run, step
from .stephen import DEFAULT_BUDGET, Budget, Saturation, is_zero, schutzenberger


@dataclass(frozen=True)
class GridAutomaton:
    automaton: InverseAutomaton
    rows: int
    trace: tuple[InstantDesc, ...]
    max_m: int
    max_n: int
    coords: tuple[tuple[str, int, int], ...]

    @property
    def width(self) -> int:
        return self.max_m + self.max_n + 4

    def c(self, i: int, j: int) -> int:
        if not (0 <= i <= self.rows and 0 <= j <= self.max_m + 1):
            raise IndexError((i, j))
        return i * self.width + j

    def d(self, i: int, l: int) -> int:
        if not (0 <= i <= self.rows and 0 <= l <= self.max_n + 1):
            raise IndexError((i, l))
        return i * self.width + self.max_m + 2 + l

    def label(self, v: int) -> str:
        kind, i, j = self.coords[v]
        return f"{kind}{i},{j}"

    def row_vertices(self, i: int) -> list[int]:
        return list(range(i * self.width, (i + 1) * self.width))

    def to_dot(self, name: str = "grid") -> str:
        labels = [self.label(v) for v in range(len(self.coords))]
        ranks = [self.row_vertices(i) for i in range(self.rows + 1)]
        return export_dot(self.automaton, name, labels, ranks)


@dataclass(frozen=True)
class RejectedAtStep:
    """The run stopped after ``step`` steps; ``grid`` is the last grid."""

    step: int
    grid: GridAutomaton


def simulate(m: CounterMachine, mm: int, nn: int, k: int) -> list[InstantDesc]:
    """Up to ``k`` steps of the (deterministic) computation from ``(i, mm, nn)``."""
    trace = [m.start(mm, nn)]
    while len(trace) <= k:
        nxt = step(m, trace[-1])
        if not nxt:
            break
        if len(nxt) > 1:
            raise ValueError("machine is not deterministic")
        trace.append(nxt[0])
    return trace


def _grid_from_trace(enc: EncodedAmalgam, trace: list[InstantDesc]) -> GridAutomaton:
    X: Alphabet = enc.alphabet
    L = X.letter
    k = len(trace) - 1
    max_m = max(d.counters[0] for d in trace)
    max_n = max(d.counters[1] for d in trace)
    width = max_m + max_n + 4
    n_vertices = (k + 1) * width

    def c(i, j):
        return i * width + j

    def d(i, l):
        return i * width + max_m + 2 + l

    table = [[NO_VERTEX] * X.size for _ in range(n_vertices)]

    def edge(p, x, q):
        assert table[p][x] in (NO_VERTEX, q) and table[q][x ^ 1] in (NO_VERTEX, p)
        table[p][x] = q
        table[q][x ^ 1] = p

    t1, t2 = L("t1"), L("t2")
    for i in range(1, k + 1):
        for j in range(max_m + 2):
            edge(c(i - 1, j), t1, c(i, j))
            edge(c(i - 1, j), t2, c(i, j))
        for l in range(max_n + 2):
            edge(d(i - 1, l), t1, d(i, l))
            edge(d(i - 1, l), t2, d(i, l))
    for i, desc in enumerate(trace):
        edge(c(i, 0), L("z1"), c(i, 1))
        for j in range(1, max_m + 1):
            edge(c(i, j), L("a1"), c(i, j + 1))
        edge(d(i, 1), L("z2"), d(i, 0))
        for l in range(1, max_n + 1):
            edge(d(i, l + 1), L("a2"), d(i, l))
        mi, ni = desc.counters
        edge(c(i, mi + 1), L(state_letter(desc.state, 1)), d(i, ni + 1))
        edge(c(i, mi + 1), L(state_letter(desc.state, 2)), d(i, ni + 1))

    coords = []
    for i in range(k + 1):
        coords += [("c", i, j) for j in range(max_m + 2)]
        coords += [("d", i, l) for l in range(max_n + 2)]
    automaton = InverseAutomaton(X, tuple(map(tuple, table)), c(0, 0), d(0, 0))
    return GridAutomaton(automaton, k, tuple(trace), max_m, max_n, tuple(coords))


def build_grid(
    machine: CounterMachine, m: int, n: int, k: int, enc: EncodedAmalgam | None = None
) -> GridAutomaton | RejectedAtStep:
    """B^(k)_{m,n}, or the last grid if the run stops before step ``k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    enc = enc or encode_amalgam(machine)
    trace = simulate(machine, m, n, k)
    grid = _grid_from_trace(enc, trace)
    if len(trace) - 1 < k:
        return RejectedAtStep(len(trace) - 1, grid)
    return grid


@dataclass
class StepVerification:
    verified: bool
    fired: int
    detail: str = ""
    result: InverseAutomaton | None = None

    def __bool__(self) -> bool:
        return self.verified


def verify_inductive_step(
    machine: CounterMachine,
    m: int,
    n: int,
    k: int,
    b: Budget = DEFAULT_BUDGET,
    enc: EncodedAmalgam | None = None,
) -> StepVerification:
    """Rebuild B^(k) from B^(k-1) by Stephen expansions and compare.

    One round of test/move relations is applied to B^(k-1) (exactly one
    instance must fire), then the result is closed under the commuting
    relations and the amalgamation pairs only.
    """
    if k < 1:
        raise ValueError("the inductive step needs k >= 1")
    enc = enc or encode_amalgam(machine)
    prev = build_grid(machine, m, n, k - 1, enc)
    target = build_grid(machine, m, n, k, enc)
    if isinstance(target, RejectedAtStep) or isinstance(prev, RejectedAtStep):
        raise ValueError(f"the run from ({m},{n}) does not reach step {k}")

    moves = enc.amalgam.select("twe")
    ws = Workspace(enc.alphabet.size)
    load(ws, prev.automaton)
    ws.set_relations(moves.oriented())
    instances = ws.detect()
    if len(instances) != 1:
        return StepVerification(False, len(instances), f"expected one move/test instance, found {len(instances)}")
    ws.apply(instances)
    ws.fold()
    a = prev.automaton
    expanded = extract(ws, enc.alphabet, a.initial, a.final)
    sat = Saturation(enc.amalgam.select("c3"), expanded, b)
    out = sat.run()
    if not out.closed:
        return StepVerification(False, 1, f"saturation exhausted its budget after {out.rounds} rounds", out.automaton)
    if not iso(out.automaton, target.automaton):
        return StepVerification(
            False,
            1,
            f"saturated automaton has {out.automaton.n_vertices} vertices / {out.automaton.n_edges} edges, "
            f"B^({k}) has {target.automaton.n_vertices} / {target.automaton.n_edges}",
            out.automaton,
        )
    return StepVerification(True, 1, "", out.automaton)


@dataclass
class Agreement:
    agrees: bool
    run_verdict: RunVerdict
    steps: int
    zero: bool | None
    grids_verified: list[int] = field(default_factory=list)
    detail: str = ""

    def __bool__(self) -> bool:
        return self.agrees


def closure_agrees(
    machine: CounterMachine,
    m: int,
    n: int,
    b: Budget = DEFAULT_BUDGET,
    steps: int = 100,
    grid_steps: int = 20,
) -> Agreement:
    """Cross-check the simulator, zero detection and the grid construction."""
    if not check(machine).normalized:
        raise ValueError("closure_agrees needs a normalized machine")
    enc = encode_amalgam(machine)
    r = run(machine, (m, n), steps)
    w = enc.word_mn(m, n)
    zero = is_zero(enc.amalgam, w, enc.zero_letters[1], b)
    out = Agreement(True, r.verdict, r.steps, zero)
    if r.verdict is RunVerdict.ACCEPTED:
        if zero is not True:
            out.agrees = False
            out.detail = f"run accepts in {r.steps} steps but is_zero gave {zero}"
        return out
    if zero is True:
        out.agrees = False
        out.detail = f"run gives {r.verdict.value} but w_({m},{n}) collapsed to zero"
        return out
    if r.verdict is RunVerdict.HALTED and zero is False:
        # the closure is the finite grid of the halted run
        closure = schutzenberger(enc.amalgam, w, b)
        grid = build_grid(machine, m, n, r.steps, enc)
        grid = grid.grid if isinstance(grid, RejectedAtStep) else grid
        if not iso(closure.automaton, grid.automaton):
            out.agrees = False
            out.detail = "closure of a rejected input differs from its grid"
            return out
    for k in range(1, min(grid_steps, r.steps) + 1):
        v = verify_inductive_step(machine, m, n, k, b, enc)
        if not v:
            out.agrees = False
            out.detail = f"inductive step {k} failed: {v.detail}"
            return out
        out.grids_verified.append(k)
    return out
