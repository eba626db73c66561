"""Compare the compiled and pure-Python kernels on folding and closure workloads.

    python benchmarks/bench_kernel.py [--repeat 3] [--rounds 300]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from schutz import automaton, kernel, stephen
from schutz.encoder import encode_amalgam
from schutz.examples import M_LOOP
from schutz.munn import munn_tree


def fold_workload(Ws, n: int, seed: int) -> int:
    rng = random.Random(seed)
    ws = Ws(8)
    ws.add_vertices(n)
    for v in range(1, n):
        ws.add_edge(rng.randrange(v), rng.randrange(8), v)
    # a few extra edges start long folding cascades without collapsing everything
    for _ in range(n // 200):
        ws.add_edge(rng.randrange(n), rng.randrange(8), rng.randrange(n))
    ws.fold()
    return ws.live


def closure_workload(Ws, rounds: int) -> int:
    enc = encode_amalgam(M_LOOP)
    p = enc.amalgam
    ws = Ws(p.alphabet.size)
    automaton.load(ws, munn_tree(p.alphabet, enc.word_mn(0, 0)))
    ws.set_relations(p.oriented())
    for _ in range(rounds):
        if not ws.expansion_round():
            break
    return ws.live


def timed(fn, repeat: int) -> tuple[float, object]:
    times, out = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--rounds", type=int, default=300, help="expansion rounds for the closure workload")
    ap.add_argument("--vertices", type=int, default=200_000, help="graph size for the fold workload")
    args = ap.parse_args()

    if kernel.BACKEND != "cython":
        print("compiled kernel not available; only the Python kernel will run")
    backends = {"python": kernel.PyWorkspace}
    if kernel.BACKEND == "cython":
        backends["cython"] = kernel.Workspace

    workloads = {
        f"fold {args.vertices} vertices": lambda Ws: fold_workload(Ws, args.vertices, 1),
        f"closure M_loop w_00, {args.rounds} rounds": lambda Ws: closure_workload(Ws, args.rounds),
    }
    print(f"{'workload':42s} {'backend':8s} {'median s':>9s} {'result':>8s}")
    for name, work in workloads.items():
        base = None
        results = set()
        for bname, Ws in backends.items():
            secs, out = timed(lambda: work(Ws), args.repeat)
            results.add(out)
            speed = "" if base is None else f"  x{base / secs:.1f}"
            base = base or secs
            print(f"{name:42s} {bname:8s} {secs:9.3f} {out:8d}{speed}")
        assert len(results) == 1, "backends disagree"

    # end-to-end: the default-budget closure behind the non-accepting criterion
    enc = encode_amalgam(M_LOOP)
    t = time.perf_counter()
    out = stephen.schutzenberger(enc.amalgam, enc.word_mn(0, 0))
    print(f"default-budget closure ({kernel.BACKEND}): {out.status.value}, {out.rounds} rounds, "
          f"{out.vertices} vertices, {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
