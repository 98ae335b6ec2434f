"""Per-position Lyndon-root parameters and the four-way position classification.

For every position ``i >= 2`` of a word the parameters are

* ``c``  - the letter opposite to ``w[i-1]``; it names the order in use,
* ``L``  - end of the longest ``c``-Lyndon factor starting at ``i``,
* ``D``  - its length ``L - i + 1``,
* ``ST``, ``E`` - the maximal extension of ``[i..L]`` keeping period ``D``.

``[ST..E]`` is the image of ``i``.  A position is *charged* when it is the
chosen representative of a run, *right open* or *left open* when a suitable
extension of the word could still change that, and *lost* otherwise.

By default every "is a run" decision is membership in the literal runs
enumeration.  ``fast=True`` swaps in the length test ``E - ST + 1 >= 2D`` on
image intervals; the two agree (an image's least period is always ``D``),
which the test suite checks exhaustively on short words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from lostpos.core import Order, Word, WordLike, as_word, factor
from lostpos.periodicity import enumerate_runs, is_lyndon, least_period, lyndon_scan

CHARGED = "charged"
RIGHT_OPEN = "right-open"
LEFT_OPEN = "left-open"
LOST = "lost"


class NotARunError(ValueError):
    pass


@dataclass(frozen=True)
class PositionParams:
    i: int
    c: int
    L: int
    D: int
    ST: int
    E: int


@dataclass(frozen=True)
class Classification:
    label: str
    subcase: Optional[str] = None


@dataclass
class PositionTable:
    word: Word
    rows: list[PositionParams]
    classes: list[Classification] = field(default_factory=list)

    def row(self, i: int) -> PositionParams:
        if not 2 <= i <= len(self.word):
            raise IndexError(f"position {i} outside 2..{len(self.word)}")
        return self.rows[i - 2]

    def label(self, i: int) -> Classification:
        return self.classes[i - 2]

    def positions(self, label: str) -> list[int]:
        return [r.i for r, k in zip(self.rows, self.classes) if k.label == label]

    def as_records(self) -> list[dict]:
        out = []
        for r, k in zip(self.rows, self.classes or [None] * len(self.rows)):
            rec = {"i": r.i, "c": r.c, "L": r.L, "D": r.D, "ST": r.ST, "E": r.E}
            rec["class"] = k.label if k else None
            rec["subcase"] = k.subcase if k else None
            out.append(rec)
        return out


def position_params(w: WordLike) -> list[PositionParams]:
    """Parameter rows for positions ``2..|w|`` without classification."""
    w = as_word(w)
    a = w.letters
    rows = []
    for i in range(2, len(a) + 1):
        c = 1 - a[i - 2]
        d, stop = lyndon_scan(a, i - 1, Order(c))
        st = i
        while st > 1 and a[st - 2] == a[st - 2 + d]:
            st -= 1
        rows.append(PositionParams(i=i, c=c, L=i + d - 1, D=d, ST=st, E=stop))
    return rows


class _Context:
    """Word plus its rows and run set, shared by the classification helpers."""

    def __init__(self, w: Word, fast: bool = False):
        self.w = w
        self.n = len(w)
        self.rows = position_params(w)
        self.by_image: dict[tuple[int, int], list[int]] = {}
        self._lyndon: dict[tuple[int, int], bool] = {}
        for r in self.rows:
            self.by_image.setdefault((r.ST, r.E), []).append(r.i)
        if fast:
            self.runs = {
                (s, e) for (s, e), pre in self.by_image.items()
                if e - s + 1 >= 2 * self.row(pre[0]).D
            }
        else:
            self.runs = {(r.start, r.end) for r in enumerate_runs(w)}

    def row(self, i: int) -> PositionParams:
        return self.rows[i - 2]

    def is_run(self, s: int, e: int) -> bool:
        return (s, e) in self.runs

    def root_is_lyndon(self, i: int, c: int) -> bool:
        key = (i, c)
        if key not in self._lyndon:
            r = self.row(i)
            self._lyndon[key] = is_lyndon(factor(self.w, i, r.L), Order(c))
        return self._lyndon[key]

    def preferred_order(self, s: int, e: int) -> int:
        pre = self.by_image.get((s, e))
        if not pre or not self.is_run(s, e) or e != self.n:
            raise NotARunError(f"[{s}..{e}] is not a run of {self.w} ending at its last letter")
        if self.row(pre[0]).D == 1:
            return 0
        firsts = {}
        for c in (0, 1):
            firsts[c] = min(i for i in pre if self.root_is_lyndon(i, c))
        return 0 if firsts[0] >= firsts[1] else 1

    def representative(self, s: int, e: int) -> int:
        pre = self.by_image.get((s, e))
        if not pre or not self.is_run(s, e):
            raise NotARunError(f"[{s}..{e}] is not a run in the image of {self.w}")
        if e < self.n:
            return max(pre)
        f = self.preferred_order(s, e)
        return max(i for i in pre if self.root_is_lyndon(i, f))

    def classify(self) -> list[Classification]:
        charged = {self.representative(s, e) for (s, e) in self.runs}
        out = []
        for r in self.rows:
            run = self.is_run(r.ST, r.E)
            if r.i in charged:
                out.append(Classification(CHARGED))
            elif r.E == self.n:
                if not run:
                    sub = "ba"
                elif not self.root_is_lyndon(r.i, self.preferred_order(r.ST, r.E)):
                    sub = "bb"
                elif r.i == r.ST:
                    sub = "bc"
                else:
                    sub = None
                if sub is not None:
                    out.append(Classification(RIGHT_OPEN, sub))
                    continue
                out.append(Classification(LOST, _lost_case(r, self.n, run)))
            elif r.ST == 1 and not run:
                out.append(Classification(LEFT_OPEN))
            else:
                out.append(Classification(LOST, _lost_case(r, self.n, run)))
        return out


def _lost_case(r: PositionParams, n: int, run: bool) -> str:
    if r.E == n:
        return "iii"
    return "ii" if run else "i"


def _context(w: WordLike, fast: bool = False) -> _Context:
    w = as_word(w)
    if not len(w):
        raise ValueError("position analysis needs a nonempty word")
    return _Context(w, fast)


def analyze(w: WordLike) -> PositionTable:
    ctx = _context(w)
    return PositionTable(ctx.w, ctx.rows, ctx.classify())


def image_interval(w: WordLike, i: int) -> tuple[int, int]:
    w = as_word(w)
    if not 2 <= i <= len(w):
        raise ValueError(f"position {i} outside 2..{len(w)}")
    r = position_params(w)[i - 2]
    return r.ST, r.E


def is_run_interval(w: WordLike, s: int, e: int) -> bool:
    return any(r.start == s and r.end == e for r in enumerate_runs(w))


def preimages(w: WordLike, s: int, e: int) -> list[int]:
    """All ``i`` whose image is ``[s..e]``, by direct search over the rows."""
    return sorted(r.i for r in position_params(w) if (r.ST, r.E) == (s, e))


def preimages_by_roots(w: WordLike, s: int, e: int) -> list[int]:
    """Preimages of ``[s..e]`` predicted from the Lyndon roots of ``w[s..e]``.

    Right of the interval's end the following letter picks the order of the
    root; at the word's end both roots qualify, and an all-equal suffix block
    is also the image of its own first position.
    """
    w = as_word(w)
    n = len(w)
    p = least_period(factor(w, s, e))
    if e == n and p == 1:
        # position 1 is never mapped
        return list(range(max(s, 2), e + 1))
    if e < n:
        orders = [Order(w.at(e + 1))]
    else:
        orders = [Order.ZERO, Order.ONE]
    out = []
    for i in range(s + 1, e - p + 2):
        root = factor(w, i, i + p - 1)
        if any(is_lyndon(root, o) for o in orders):
            out.append(i)
    return out


def preferred_order(w: WordLike, s: int, e: int) -> int:
    return _context(w).preferred_order(s, e)


def representative(w: WordLike, s: int, e: int) -> int:
    return _context(w).representative(s, e)


def classify(w: WordLike) -> list[Classification]:
    return _context(w).classify()


def lost_positions(w: WordLike, fast: bool = False) -> list[int]:
    """Lost positions straight from their positive description.

    ``i`` is lost when its image ends before the word does and is either a
    non-run not touching position 1, or a run in which the root at ``i`` is
    followed by another full root occurrence ``[i+D..i+2D-1]``; or when the
    image reaches the end, is a run, the root at ``i`` is in the preferred
    order, ``ST < i``, and again a further full root fits after it.
    """
    ctx = _context(w, fast)
    n = ctx.n
    out = []
    for r in ctx.rows:
        run = ctx.is_run(r.ST, r.E)
        another_root = r.i + 2 * r.D - 1 <= r.E
        if r.E < n:
            if (not run and r.ST > 1) or (run and another_root):
                out.append(r.i)
        elif run and another_root and r.ST < r.i:
            f = ctx.preferred_order(r.ST, r.E)
            if ctx.root_is_lyndon(r.i, f):
                out.append(r.i)
    return out
