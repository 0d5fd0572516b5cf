"""
Group words and finite presentations.

Word text grammar:
    word     := factor*
    factor   := primary ('^' integer)?
    primary  := generator | '[' word ',' word ']' | '(' word ')'

Juxtaposition is the product, [a,b] = a b a^-1 b^-1, and generator names
are matched longest first against the presentation's generators.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from src.errors import ParseError, PreconditionError

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]  # (generator index, +1 or -1)

DEFAULT_GENERATORS = ("x", "y")


class Word:
    """Sequence of letters; free reduction is available but never forced."""

    __slots__ = ("letters", "generators")

    def __init__(self, letters: Iterable[Letter] = (), generators: Sequence[str] = DEFAULT_GENERATORS):
        self.letters: Tuple[Letter, ...] = tuple(letters)
        self.generators: Tuple[str, ...] = tuple(generators)
        for g, e in self.letters:
            if not 0 <= g < len(self.generators) or e not in (1, -1):
                raise PreconditionError(f"invalid letter ({g}, {e}) for generators {self.generators}")

    @classmethod
    def generator(cls, name: str, generators: Sequence[str] = DEFAULT_GENERATORS) -> "Word":
        return cls([(tuple(generators).index(name), 1)], generators)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.letters, self.generators))

    def __mul__(self, other: "Word") -> "Word":
        if self.generators != other.generators:
            raise PreconditionError("words over different generator sets")
        return Word(self.letters + other.letters, self.generators)

    def inverse(self) -> "Word":
        return Word([(g, -e) for g, e in reversed(self.letters)], self.generators)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n), self.generators)

    def prefix(self, k: int) -> "Word":
        return Word(self.letters[:k], self.generators)

    def free_reduce(self) -> "Word":
        stack: List[Letter] = []
        for g, e in self.letters:
            if stack and stack[-1] == (g, -e):
                stack.pop()
            else:
                stack.append((g, e))
        return Word(stack, self.generators)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            self.generators[g] if e == 1 else f"{self.generators[g]}^-1" for g, e in self.letters
        )

    def __repr__(self) -> str:
        return f"Word({self})"


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


class _WordParser:
    def __init__(self, text: str, generators: Sequence[str]):
        self.text = text
        self.generators = tuple(generators)
        self.names = sorted(self.generators, key=len, reverse=True)
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r} at {self.pos} in {self.text!r}, found {found!r}")
        self.pos += 1

    def parse(self) -> Word:
        w = self.word()
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r} at {self.pos} in {self.text!r}")
        return w

    def word(self) -> Word:
        w = Word((), self.generators)
        while self.peek() and self.peek() not in ",])":
            w = w * self.factor()
        return w

    def factor(self) -> Word:
        base = self.primary()
        if self.peek() == "^":
            self.pos += 1
            return base ** self.integer()
        return base

    def integer(self) -> int:
        self.skip()
        start = self.pos
        braced = self.peek() in ("(", "{")
        if braced:
            self.pos += 1
            self.skip()
            start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        token = self.text[start:self.pos]
        if not token or token in "+-":
            raise ParseError(f"malformed exponent at {start} in {self.text!r}")
        if braced:
            closer = self.peek()
            if closer not in (")", "}"):
                raise ParseError(f"unbalanced exponent brackets in {self.text!r}")
            self.pos += 1
        return int(token)

    def primary(self) -> Word:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            return commutator(a, b)
        if ch == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return Word.generator(name, self.generators)
        found = ch or "end of input"
        raise ParseError(f"unknown generator {found!r} at {self.pos} in {self.text!r}")


def parse_word(text: str, generators: Sequence[str] = DEFAULT_GENERATORS) -> Word:
    """Parse e.g. ``[y,x^-1]^2`` into its fully expanded letter sequence."""
    return _WordParser(text, generators).parse()


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for r in self.relators:
            if r.generators != self.generators:
                raise PreconditionError("relator over a different generator set")
        object.__setattr__(self, "relators", tuple(r.free_reduce() for r in self.relators))

    @classmethod
    def parse(cls, generators: Sequence[str], relators: Sequence[str]) -> "Presentation":
        gens = tuple(generators)
        return cls(gens, tuple(parse_word(r, gens) for r in relators))
