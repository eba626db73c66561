"""Munn trees and the word problem of the free inverse semigroup."""

from __future__ import annotations

from typing import Sequence

from .alphabet import Alphabet
from .automaton import InverseAutomaton, PendingAutomaton, fold, iso


def munn_tree(alphabet: Alphabet, word: Sequence[int]) -> InverseAutomaton:
    """Complete folding of the linear automaton of ``word``."""
    if not word:
        raise ValueError("the empty word is not an element of a free inverse semigroup")
    alphabet.validate(word)
    return fold(PendingAutomaton.linear(alphabet, word))


def eq_free(alphabet: Alphabet, u: Sequence[int], v: Sequence[int]) -> bool:
    """Whether ``u`` and ``v`` are equal in FIS(X)."""
    return iso(munn_tree(alphabet, u), munn_tree(alphabet, v))
