"""Command-line front end.

Exit codes: 0 for a definitive answer, 2 when a semidecision ran out of
budget (Unknown, StepLimit), 1 on errors or discrepancies.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .alphabet import Alphabet
from .automaton import InverseAutomaton, canonical_form, export_dot
from .encoder import encode_amalgam
from .examples import builtin
from .grid import RejectedAtStep, build_grid, closure_agrees, verify_inductive_step
from .machine import CounterMachine, MachineError, RunVerdict, check, normalize, run
from .munn import munn_tree
from .presentation import ParseError, Presentation
from .stephen import Budget, Verdict, eq, schutzenberger

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


@dataclass(frozen=True)
class Config:
    budget: Budget
    output: str | None
    format: str


class _Out:
    def __init__(self, cfg: Config):
        self.cfg = cfg
        self.chunks: list[str] = []

    def text(self, s: str) -> None:
        self.chunks.append(s if s.endswith("\n") else s + "\n")

    def record(self, obj: dict) -> None:
        self.chunks.append(json.dumps(obj, sort_keys=True) + "\n")

    def flush(self) -> None:
        data = "".join(self.chunks)
        if self.cfg.output:
            with open(self.cfg.output, "w", encoding="utf-8") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data)


def automaton_record(a: InverseAutomaton) -> dict:
    letters, n, edges, final = canonical_form(a)
    return {
        "letters": list(letters),
        "vertices": n,
        "initial": 0,
        "final": final,
        "edges": [[p, a.alphabet.name(x), q] for p, x, q in edges],
    }


def automaton_text(a: InverseAutomaton) -> str:
    rec = automaton_record(a)
    lines = [f"vertices {rec['vertices']}", "initial 0", f"final {rec['final']}"]
    lines += [f"edge {p} {x} {q}" for p, x, q in rec["edges"]]
    return "\n".join(lines)


def _emit_automaton(out: _Out, a: InverseAutomaton, name: str, extra: dict) -> None:
    fmt = out.cfg.format
    if fmt == "dot":
        out.text(export_dot(a, name))
    elif fmt == "json":
        out.record({**extra, "automaton": automaton_record(a)})
    else:
        for k, v in extra.items():
            out.text(f"{k}: {v}")
        out.text(automaton_text(a))


def _load_machine(name: str) -> CounterMachine:
    if os.path.exists(name):
        return CounterMachine.read(name)
    return builtin(name)


def _alphabet_for(word: str, path: str | None, letters: str | None) -> Alphabet:
    if path:
        return Presentation.read(path).alphabet
    if letters:
        return Alphabet(letters.split())
    names = dict.fromkeys(tok.rstrip("'") for tok in word.split())
    return Alphabet(list(names))


def cmd_munn(args, cfg: Config) -> int:
    X = _alphabet_for(args.word, args.alphabet, args.letters)
    a = munn_tree(X, X.word(args.word))
    out = _Out(cfg)
    _emit_automaton(out, a, "munn", {"word": args.word})
    out.flush()
    return EXIT_OK


def cmd_eq(args, cfg: Config) -> int:
    p = Presentation.read(args.presentation)
    verdict = eq(p, p.word(args.u), p.word(args.v), cfg.budget)
    out = _Out(cfg)
    rec = {
        "u": args.u,
        "v": args.v,
        "verdict": verdict.value,
        "max_rounds": cfg.budget.max_rounds,
        "max_vertices": cfg.budget.max_vertices,
    }
    if cfg.format == "json":
        out.record(rec)
    else:
        out.text({Verdict.EQUAL: "Equal", Verdict.NOT_EQUAL: "NotEqual", Verdict.UNKNOWN: "Unknown"}[verdict])
    out.flush()
    return EXIT_UNKNOWN if verdict is Verdict.UNKNOWN else EXIT_OK


def cmd_close(args, cfg: Config) -> int:
    p = Presentation.read(args.presentation)
    res = schutzenberger(p, p.word(args.word), cfg.budget)
    out = _Out(cfg)
    extra = {
        "status": res.status.value,
        "rounds": res.rounds,
        "vertices": res.automaton.n_vertices,
        "collapsed": res.collapsed,
    }
    _emit_automaton(out, res.automaton, "closure", extra)
    out.flush()
    return EXIT_OK if res.closed else EXIT_UNKNOWN


def cmd_cm(args, cfg: Config) -> int:
    m = _load_machine(args.machine)
    out = _Out(cfg)
    code = EXIT_OK
    if args.action == "check":
        rep = check(m).as_dict()
        if cfg.format == "json":
            out.record(rep)
        else:
            for k, v in rep.items():
                out.text(f"{k}: {str(v).lower()}")
    elif args.action == "run":
        r = run(m, (args.m, args.n), args.steps)
        if cfg.format == "json":
            out.record({"verdict": r.verdict.value, "steps": r.steps, "trace": [str(d) for d in r.trace]})
        else:
            for d in r.trace:
                out.text(str(d))
            out.text(f"{r.verdict.value} after {r.steps} steps")
        if r.verdict is RunVerdict.STEP_LIMIT:
            code = EXIT_UNKNOWN
    else:
        out.text(normalize(m).format())
    out.flush()
    return code


def cmd_encode(args, cfg: Config) -> int:
    m = _load_machine(args.machine)
    enc = encode_amalgam(m, kill_t=args.kill_t)
    parts = {"amalgam": enc.amalgam, "core": enc.core, "tape1": enc.tapes[1], "tape2": enc.tapes[2]}
    chosen = list(parts) if args.part == "all" else [args.part]
    if args.part == "all" and cfg.output:
        os.makedirs(cfg.output, exist_ok=True)
        for name in chosen:
            with open(os.path.join(cfg.output, f"{name}.pres"), "w", encoding="utf-8") as fh:
                fh.write(parts[name].format())
        return EXIT_OK
    out = _Out(cfg)
    for name in chosen:
        if len(chosen) > 1:
            out.text(f"# --- {name}")
        out.text(parts[name].format())
    out.flush()
    return EXIT_OK


def cmd_grid(args, cfg: Config) -> int:
    m = _load_machine(args.machine)
    g = build_grid(m, args.m, args.n, args.k)
    rejected = isinstance(g, RejectedAtStep)
    grid = g.grid if rejected else g
    info = {"rows": grid.rows, "vertices": grid.automaton.n_vertices, "halted_at": g.step if rejected else None}
    code = EXIT_OK
    if args.verify:
        failed = []
        for k in range(1, grid.rows + 1):
            v = verify_inductive_step(m, args.m, args.n, k, cfg.budget)
            if not v:
                failed.append({"k": k, "detail": v.detail})
        info["verified"] = not failed
        if failed:
            info["failures"] = failed
            code = EXIT_ERROR
    out = _Out(cfg)
    if cfg.format == "dot":
        out.text(grid.to_dot())
    elif cfg.format == "json":
        out.record({**info, "automaton": automaton_record(grid.automaton)})
    else:
        for k, v in info.items():
            out.text(f"{k}: {v}")
        out.text(automaton_text(grid.automaton))
    out.flush()
    return code


def _agree_job(job):
    m, mm, nn, budget, steps = job
    a = closure_agrees(m, mm, nn, budget, steps=steps)
    return {
        "m": mm,
        "n": nn,
        "agrees": a.agrees,
        "run": a.run_verdict.value,
        "steps": a.steps,
        "zero": a.zero,
        "grids_verified": len(a.grids_verified),
        "detail": a.detail,
    }


def cmd_agree(args, cfg: Config) -> int:
    m = _load_machine(args.machine)
    jobs = [(m, a, b, cfg.budget, args.steps) for a, b in itertools.product(args.m, args.n)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_agree_job, jobs))
    else:
        results = [_agree_job(j) for j in jobs]
    out = _Out(cfg)
    for r in results:
        if cfg.format == "json":
            out.record(r)
        else:
            zero = {True: "zero", False: "nonzero", None: "unknown"}[r["zero"]]
            head = "Agrees" if r["agrees"] else "Discrepancy"
            line = f"({r['m']},{r['n']}) {head} ({zero}); run {r['run']} after {r['steps']} steps"
            if r["grids_verified"]:
                line += f"; grid verified to k={r['grids_verified']}"
            if r["detail"]:
                line += f"; {r['detail']}"
            out.text(line)
    out.flush()
    if not all(r["agrees"] for r in results):
        return EXIT_ERROR
    return EXIT_UNKNOWN if any(r["zero"] is None for r in results) else EXIT_OK


def _positive(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rounds", type=_positive, default=1000)
    common.add_argument("--max-vertices", type=_positive, default=100_000)
    common.add_argument("-o", "--output", help="write to this file (directory for 'encode --part all')")
    common.add_argument("--format", choices=("text", "dot", "json"), default="text")

    parser = argparse.ArgumentParser(prog="schutz", description="Inverse semigroup word problems and counter-machine encodings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("munn", parents=[common], help="Munn tree of a word")
    p.add_argument("word", help="space separated letters, inverse marked with '")
    p.add_argument("--alphabet", help="presentation file whose letters to use")
    p.add_argument("--letters", help="alphabet as a space separated list")
    p.set_defaults(func=cmd_munn)

    p = sub.add_parser("eq", parents=[common], help="semidecide u = v")
    p.add_argument("presentation")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("close", parents=[common], help="Schutzenberger automaton of a word")
    p.add_argument("presentation")
    p.add_argument("word")
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("cm", parents=[common], help="counter machine tools")
    p.add_argument("action", choices=("check", "run", "normalize"))
    p.add_argument("machine", help="machine file or built-in name")
    p.add_argument("--m", type=_nonnegative, default=0)
    p.add_argument("--n", type=_nonnegative, default=0)
    p.add_argument("--steps", type=_nonnegative, default=100)
    p.set_defaults(func=cmd_cm)

    p = sub.add_parser("encode", parents=[common], help="write the tape, core and amalgam presentations")
    p.add_argument("machine")
    p.add_argument("--part", choices=("amalgam", "core", "tape1", "tape2", "all"), default="amalgam")
    p.add_argument("--kill-t", action="store_true", help="let the state-killing relations range over t letters too")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("grid", parents=[common], help="grid automaton of the first k steps")
    p.add_argument("machine")
    p.add_argument("--m", type=_nonnegative, default=0)
    p.add_argument("--n", type=_nonnegative, default=0)
    p.add_argument("--k", type=_nonnegative, default=1)
    p.add_argument("--verify", action="store_true", help="rebuild every row by Stephen expansions")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("agree", parents=[common], help="cross-check simulator, zero test and grids")
    p.add_argument("machine")
    p.add_argument("--m", type=_nonnegative, nargs="+", default=[0])
    p.add_argument("--n", type=_nonnegative, nargs="+", default=[0])
    p.add_argument("--steps", type=_nonnegative, default=100)
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_agree)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = Config(Budget(args.max_rounds, args.max_vertices), args.output, args.format)
    try:
        return args.func(args, cfg)
    except ParseError as exc:
        print(f"schutz: parse error: {exc}", file=sys.stderr)
    except (MachineError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"schutz: error: {msg}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
