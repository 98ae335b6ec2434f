"""Binary words, the two lexicographic orders and elementary word operations.

Positions are 1-based at every public boundary.  Internally a word is a tuple
of ints so slicing and hashing stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Union

Letter = int

_WHITESPACE = " \t\r\n"


class Order(IntEnum):
    """Lexicographic order named by its least letter: ``ZERO`` is 0 < 1."""

    ZERO = 0
    ONE = 1

    @property
    def least(self) -> Letter:
        return int(self)

    def key(self, c: Letter) -> int:
        """Rank of letter ``c`` under this order (0 for the least letter)."""
        return c ^ int(self)


class WordError(ValueError):
    """Raised for malformed word text or out-of-range positions."""


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for c in self.letters:
            if c not in (0, 1):
                raise WordError(f"not a binary letter: {c!r}")

    @classmethod
    def of(cls, letters: Iterable[int]) -> "Word":
        return cls(tuple(int(c) for c in letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join("01"[c] for c in self.letters)

    def __repr__(self) -> str:
        return f"Word('{self}')"

    def __add__(self, other: "WordLike") -> "Word":
        return Word(self.letters + as_word(other).letters)

    def __lt__(self, other: "Word") -> bool:
        return self.letters < other.letters

    def at(self, i: int) -> Letter:
        """Letter at 1-based position ``i``."""
        if not 1 <= i <= len(self.letters):
            raise WordError(f"position {i} outside 1..{len(self.letters)}")
        return self.letters[i - 1]

    def complemented(self) -> "Word":
        return Word(tuple(1 - c for c in self.letters))


WordLike = Union[Word, str, Iterable[int]]


def parse_word(text: str) -> Word:
    """Parse ``'0'``/``'1'`` text, ignoring ASCII whitespace.

    The error message names the 1-based index of the offending character in
    ``text``.
    """
    letters = []
    for idx, ch in enumerate(text, start=1):
        if ch == "0" or ch == "1":
            letters.append(ord(ch) - 48)
        elif ch not in _WHITESPACE:
            raise WordError(f"invalid character {ch!r} at index {idx}")
    return Word(tuple(letters))


def as_word(w: WordLike) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse_word(w)
    return Word.of(w)


def complement(c: Letter) -> Letter:
    return 1 - c


def compare(u: WordLike, v: WordLike, o: Order) -> int:
    """Three-way lexicographic comparison under ``o``: -1, 0 or 1.

    A proper prefix is smaller than its extensions.
    """
    a, b = as_word(u).letters, as_word(v).letters
    for x, y in zip(a, b):
        if x != y:
            return -1 if o.key(x) < o.key(y) else 1
    if len(a) == len(b):
        return 0
    return -1 if len(a) < len(b) else 1


def factor(w: WordLike, i: int, j: int) -> Word:
    """The factor ``w[i..j]`` (inclusive, 1-based)."""
    w = as_word(w)
    if not 1 <= i <= j <= len(w):
        raise WordError(f"factor [{i}..{j}] outside 1..{len(w)}")
    return Word(w.letters[i - 1 : j])
