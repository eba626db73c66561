"""Stephen's procedure for inverse semigroup presentations, and the
counter-machine encoding used to build amalgams with undecidable word problem."""

from .alphabet import Alphabet, inverse
from .automaton import InverseAutomaton, PendingAutomaton, canonical_form, export_dot, fold, iso
from .encoder import EncodedAmalgam, embedding_probe, encode_amalgam, encode_core, encode_tape, word_mn
from .grid import GridAutomaton, RejectedAtStep, build_grid, closure_agrees, verify_inductive_step
from .kernel import BACKEND
from .machine import CounterMachine, Instruction, check, machine, normalize, run, simulates
from .munn import eq_free, munn_tree
from .presentation import ParseError, Presentation
from .stephen import (
    Budget,
    NotAZeroError,
    Status,
    Verdict,
    check_potential,
    close,
    eq,
    expansion_round,
    is_zero,
    schutzenberger,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BACKEND",
    "Budget",
    "CounterMachine",
    "EncodedAmalgam",
    "GridAutomaton",
    "Instruction",
    "InverseAutomaton",
    "NotAZeroError",
    "ParseError",
    "PendingAutomaton",
    "Presentation",
    "RejectedAtStep",
    "Status",
    "Verdict",
    "build_grid",
    "canonical_form",
    "check",
    "check_potential",
    "close",
    "closure_agrees",
    "embedding_probe",
    "encode_amalgam",
    "encode_core",
    "encode_tape",
    "eq",
    "eq_free",
    "expansion_round",
    "export_dot",
    "fold",
    "inverse",
    "is_zero",
    "iso",
    "machine",
    "munn_tree",
    "normalize",
    "run",
    "schutzenberger",
    "simulates",
    "verify_inductive_step",
    "word_mn",
]
