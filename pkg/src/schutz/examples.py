"""Small named machines used in tests, benchmarks and the CLI."""

from __future__ import annotations

from .machine import CounterMachine, machine

M_HALT1 = machine("i f", [("i", 1, "+", "f")])
M_LOOP = machine("i p f", [("i", 1, "+", "p"), ("p", 2, "+", "i")])
M_THREE = machine("i p f", [("i", 1, "+", "p"), ("p", 2, "+", "f")])
# drains tape 1 into tape 2; the decrement hits both the ``a`` and blank cases
M_TRANSFER = machine(
    "i p q r f",
    [
        ("i", 1, "a", "p"),
        ("i", 1, "b", "f"),
        ("p", 2, "+", "q"),
        ("q", 1, "-", "r"),
        ("r", 2, "a", "i"),
        ("r", 2, "b", "i"),
    ],
)
# stops in a non-final state after one or two steps
M_STUCK = machine("i p q f", [("i", 1, "+", "p"), ("p", 2, "-", "q")])

BUILTIN: dict[str, CounterMachine] = {
    "halt1": M_HALT1,
    "loop": M_LOOP,
    "three": M_THREE,
    "transfer": M_TRANSFER,
    "stuck": M_STUCK,
}


def builtin(name: str) -> CounterMachine:
    """Look up ``halt1`` etc.; the ``M_`` prefix is optional."""
    key = name[2:] if name.startswith("M_") else name
    try:
        return BUILTIN[key]
    except KeyError:
        raise KeyError(f"no built-in machine {name!r}; known: {', '.join(sorted(BUILTIN))}") from None
