"""Letters, signed letters and words over a doubled alphabet.

A signed letter is an int ``2*i + s`` where ``i`` indexes the declared letter
and ``s`` is 0 for the letter itself and 1 for its formal inverse, so the
involution on letters is ``x ^ 1`` and the fixed order on the doubled alphabet
is declaration order with every letter immediately before its inverse.
"""

from __future__ import annotations

from typing import Iterable, Sequence

INVERSE_MARK = "'"

Word = tuple[int, ...]


def inverse_letter(x: int) -> int:
    return x ^ 1


def inverse(word: Sequence[int]) -> Word:
    """``(uv)^-1 = v^-1 u^-1``."""
    return tuple(x ^ 1 for x in reversed(word))


def is_positive(x: int) -> bool:
    return not x & 1


class Alphabet:
    """An ordered set of letter names; inverses are implicit."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        index: dict[str, int] = {}
        for i, name in enumerate(letters):
            if not name or any(c.isspace() for c in name) or "#" in name or name == "=":
                raise ValueError(f"invalid letter name {name!r}")
            if name.endswith(INVERSE_MARK):
                raise ValueError(f"letter name {name!r} ends with the inverse marker")
            if name in index:
                raise ValueError(f"duplicate letter {name!r}")
            index[name] = i
        self.letters = letters
        self._index = index

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.letters)!r})"

    def __contains__(self, name: object) -> bool:
        return name in self._index

    @property
    def size(self) -> int:
        """Number of signed letters, ``|X~| = 2|X|``."""
        return 2 * len(self.letters)

    def letter(self, name: str) -> int:
        """Signed letter for ``name`` or ``name'``."""
        if name.endswith(INVERSE_MARK):
            return self.letter(name[: -len(INVERSE_MARK)]) ^ 1
        try:
            return 2 * self._index[name]
        except KeyError:
            raise KeyError(f"unknown letter {name!r}") from None

    def name(self, x: int) -> str:
        base = self.letters[x >> 1]
        return base + INVERSE_MARK if x & 1 else base

    def word(self, text: str | Iterable[str]) -> Word:
        """Parse ``"t' a t"`` (or an iterable of tokens) into a word."""
        tokens = text.split() if isinstance(text, str) else list(text)
        return tuple(self.letter(tok) for tok in tokens)

    def format(self, word: Sequence[int]) -> str:
        return " ".join(self.name(x) for x in word)

    def signed_letters(self) -> range:
        return range(self.size)

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.letters + other.letters)

    def validate(self, word: Sequence[int]) -> None:
        for x in word:
            if not 0 <= x < self.size:
                raise ValueError(f"signed letter {x} out of range for {self!r}")
