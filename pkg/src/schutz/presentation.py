"""Inverse semigroup presentations and their text format.

Format (UTF-8, LF)::

    # comment
    letters a b t
    rel t a = a t        # tag c

A word is a whitespace-separated list of letters, an inverse being marked by
a trailing apostrophe. A trailing ``# tag X`` comment on a ``rel`` line is
kept as the relation's tag.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabet import Alphabet, Word

_TAG = re.compile(r"#\s*tag\s+(\S+)")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class Presentation:
    alphabet: Alphabet
    relations: list[tuple[Word, Word]] = field(default_factory=list)
    tags: list[str | None] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.tags) < len(self.relations):
            self.tags = list(self.tags) + [None] * (len(self.relations) - len(self.tags))
        for lhs, rhs in self.relations:
            self._check(lhs, rhs)

    def _check(self, lhs: Sequence[int], rhs: Sequence[int]) -> None:
        if not lhs or not rhs:
            raise ValueError("relation sides must be nonempty")
        self.alphabet.validate(lhs)
        self.alphabet.validate(rhs)

    def add(self, lhs: Sequence[int], rhs: Sequence[int], tag: str | None = None) -> None:
        lhs, rhs = tuple(lhs), tuple(rhs)
        self._check(lhs, rhs)
        self.relations.append((lhs, rhs))
        self.tags.append(tag)

    def __len__(self) -> int:
        return len(self.relations)

    def oriented(self) -> list[tuple[Word, Word]]:
        """``R ∪ R^-1`` as (read, graft) pairs."""
        out = []
        for lhs, rhs in self.relations:
            out.append((lhs, rhs))
            out.append((rhs, lhs))
        return out

    def select(self, tags: Iterable[str]) -> "Presentation":
        """Sub-presentation of the relations carrying one of ``tags``."""
        wanted = set(tags)
        keep = [k for k, t in enumerate(self.tags) if t in wanted]
        return Presentation(self.alphabet, [self.relations[k] for k in keep], [self.tags[k] for k in keep])

    def count(self, tag: str) -> int:
        return sum(1 for t in self.tags if t == tag)

    def word(self, text: str) -> Word:
        return self.alphabet.word(text)

    def format(self) -> str:
        lines = ["letters " + " ".join(self.alphabet.letters)]
        fmt = self.alphabet.format
        for (lhs, rhs), tag in zip(self.relations, self.tags):
            line = f"rel {fmt(lhs)} = {fmt(rhs)}"
            if tag is not None:
                line += f"  # tag {tag}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        alphabet = None
        pres = None
        for lineno, raw in enumerate(text.split("\n"), 1):
            body, _, comment = raw.partition("#")
            tokens = body.split()
            if not tokens:
                continue
            head, args = tokens[0], tokens[1:]
            if head == "letters":
                if alphabet is not None:
                    raise ParseError("alphabet declared twice", lineno)
                if not args:
                    raise ParseError("empty alphabet", lineno)
                try:
                    alphabet = Alphabet(args)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno) from None
                pres = cls(alphabet)
            elif head == "rel":
                if pres is None:
                    raise ParseError("relation before 'letters'", lineno)
                if args.count("=") != 1:
                    raise ParseError("relation needs exactly one '='", lineno)
                k = args.index("=")
                try:
                    lhs, rhs = alphabet.word(args[:k]), alphabet.word(args[k + 1 :])
                except KeyError as exc:
                    raise ParseError(str(exc.args[0]), lineno) from None
                if not lhs or not rhs:
                    raise ParseError("relation sides must be nonempty", lineno)
                m = _TAG.search("#" + comment) if comment else None
                pres.add(lhs, rhs, m.group(1) if m else None)
            else:
                raise ParseError(f"unknown directive {head!r}", lineno)
        if pres is None:
            raise ParseError("missing 'letters' declaration")
        return pres

    @classmethod
    def read(cls, path) -> "Presentation":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())
