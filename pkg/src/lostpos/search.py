"""Pruned depth-first search for the longest word satisfying P_d.

Words are visited in lexicographic order starting from ``0``.  A word that
satisfies P_d is extended by ``0``; a word that fails it is replaced by its
lexicographic successor among prefix-incomparable words.  Each prefix keeps a
snapshot of its open positions (those whose periodic extension reaches the
current end) plus the sorted list of lost positions that are already final,
so extending a word only revisits the open ones.

The inner loop lives in :mod:`lostpos._kernels`; this module owns buffers,
guards, progress reporting and the optional split into subtree tasks.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from lostpos import _kernels as K
from lostpos.core import Word, WordLike, as_word
from lostpos.density import PdVerdict, Threshold, check_pd, parse_threshold

log = logging.getLogger(__name__)

DEFAULT_MAX_LEN = 5000
DEFAULT_MAX_NODES = 10**11
PROGRESS_EVERY = 10**6
MAX_WITNESSES = 16

# the kernel does den*(p-1) >= num*j in int64
_KERNEL_LIMIT = 2**40


class SearchError(RuntimeError):
    pass


def next_word(w: WordLike) -> Word:
    """Lexicographic successor of ``w`` among words not having it as a prefix.

    ``w = u 0 1^k`` becomes ``u 1``.  The all-ones words have no successor.
    """
    a = list(as_word(w).letters)
    while a and a[-1] == 1:
        a.pop()
    if not a:
        raise SearchError(f"{as_word(w)} has no successor")
    a[-1] = 1
    return Word(tuple(a))


class _Buffers:
    """Per-depth snapshot storage, grown on demand."""

    def __init__(self, cap_len: int = 512, cap_open: int = 1 << 14, cap_closed: int = 1 << 12):
        self.w = np.zeros(cap_len + 2, dtype=np.int8)
        self.blk = np.zeros(cap_len + 2, dtype=np.int32)
        self.o_off = np.zeros(cap_len + 2, dtype=np.int64)
        self.o_cnt = np.zeros(cap_len + 2, dtype=np.int64)
        self.c_off = np.zeros(cap_len + 2, dtype=np.int64)
        self.c_cnt = np.zeros(cap_len + 2, dtype=np.int64)
        self.first0 = np.zeros(cap_len + 2, dtype=np.int32)
        self.first1 = np.zeros(cap_len + 2, dtype=np.int32)
        self.tmp = np.zeros(cap_len + 2, dtype=np.int32)
        self.o_i = np.zeros(cap_open, dtype=np.int32)
        self.o_d = np.zeros(cap_open, dtype=np.int32)
        self.o_st = np.zeros(cap_open, dtype=np.int32)
        self.c_pos = np.zeros(cap_closed, dtype=np.int32)

    @property
    def cap_len(self) -> int:
        return self.w.shape[0] - 2

    def grow(self, status: int) -> None:
        if status == K.GROW_LEN:
            extra = self.cap_len + 2
            for name in ("w", "blk", "o_off", "o_cnt", "c_off", "c_cnt", "first0", "first1", "tmp"):
                a = getattr(self, name)
                setattr(self, name, np.concatenate([a, np.zeros(extra, dtype=a.dtype)]))
        elif status == K.GROW_OPEN:
            for name in ("o_i", "o_d", "o_st"):
                a = getattr(self, name)
                setattr(self, name, np.concatenate([a, np.zeros_like(a)]))
        elif status == K.GROW_CLOSED:
            self.c_pos = np.concatenate([self.c_pos, np.zeros_like(self.c_pos)])
        else:
            raise ValueError(status)

    def ensure(self, n: int) -> None:
        """Make room for computing the snapshot of length ``n``."""
        while n > self.cap_len:
            self.grow(K.GROW_LEN)
        need = self.o_off[n - 1] + 2 * self.o_cnt[n - 1] + 1
        while need > self.o_i.shape[0]:
            self.grow(K.GROW_OPEN)
        need = self.c_off[n - 1] + 2 * self.c_cnt[n - 1] + self.o_cnt[n - 1]
        while need > self.c_pos.shape[0]:
            self.grow(K.GROW_CLOSED)

    def compute(self, n: int) -> None:
        self.ensure(n)
        K.compute_state(n, self.w, self.blk, self.o_i, self.o_d, self.o_st, self.o_off,
                        self.o_cnt, self.c_pos, self.c_off, self.c_cnt)

    def lost(self, n: int) -> list[int]:
        if n < 2:
            return []
        arr = K.lost_of_state(n, self.w, self.o_i, self.o_d, self.o_st, self.o_off, self.o_cnt,
                              self.c_pos, self.c_off, self.c_cnt, self.first0, self.first1, self.tmp)
        return [int(p) for p in arr]

    def load_prefix(self, letters) -> None:
        """Build snapshots for every prefix of ``letters``."""
        for t, c in enumerate(letters, start=1):
            self.ensure(t)
            self.w[t] = c
            self.compute(t)


class SearchState:
    """Incrementally maintained lost positions of a growing/shrinking word."""

    def __init__(self, word: WordLike = ""):
        self._buf = _Buffers(cap_len=64, cap_open=256, cap_closed=64)
        self.n = 0
        for c in as_word(word).letters:
            self.extend(c)

    @property
    def word(self) -> Word:
        return Word(tuple(int(c) for c in self._buf.w[1 : self.n + 1]))

    def __len__(self) -> int:
        return self.n

    def extend(self, x: int) -> "SearchState":
        if x not in (0, 1):
            raise ValueError(f"not a binary letter: {x!r}")
        n = self.n + 1
        self._buf.ensure(n)
        self._buf.w[n] = x
        self._buf.compute(n)
        self.n = n
        return self

    def backtrack(self) -> "SearchState":
        if self.n == 0:
            raise SearchError("cannot backtrack the empty word")
        # snapshots of shorter prefixes are untouched by deeper ones
        self.n -= 1
        return self

    def lost_positions(self) -> list[int]:
        return self._buf.lost(self.n)

    def open_rows(self) -> list[tuple[int, int, int, int, int]]:
        """``(i, L, D, ST, E)`` for positions whose image reaches the end."""
        if self.n < 2:
            return []
        b = self._buf
        base, cnt = int(b.o_off[self.n]), int(b.o_cnt[self.n])
        rows = []
        for t in range(base, base + cnt):
            i, d, st = int(b.o_i[t]), int(b.o_d[t]), int(b.o_st[t])
            rows.append((i, i + d - 1, d, st, self.n))
        return rows

    def pd_holds(self, d: Threshold) -> bool:
        lost = self.lost_positions()
        return all(d.denominator * (p - 1) >= d.numerator * j for j, p in enumerate(lost, start=1))


@dataclass
class SearchResult:
    d: Fraction
    n_d: int
    tree_size: int
    conclusive: bool
    longest: list[Word] = field(default_factory=list)
    ties: int = 0
    elapsed: float = 0.0
    reason: str = "done"
    last_words: list[Word] = field(default_factory=list)

    @property
    def nodes_per_sec(self) -> float:
        return self.tree_size / self.elapsed if self.elapsed > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "d": f"{self.d.numerator}/{self.d.denominator}",
            "nd": self.n_d,
            "tree_size": self.tree_size,
            "conclusive": self.conclusive,
            "reason": self.reason,
            "longest": [str(w) for w in self.longest],
            "ties": self.ties,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "nodes_per_sec": round(self.nodes_per_sec, 1),
        }


ProgressFn = Callable[[str, int, int, float], None]


def write_snapshot(path: str, word: str, nodes: int, nd: int) -> None:
    """Atomically replace ``path`` with one ``word=.. nodes=.. nd=..`` line."""
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(f"word={word} nodes={nodes} nd={nd}\n")
    os.replace(tmp, path)


def _widen(rows: np.ndarray, width: int) -> np.ndarray:
    if rows.shape[1] >= width:
        return rows
    out = np.full((rows.shape[0], width), -1, dtype=rows.dtype)
    out[:, : rows.shape[1]] = rows
    return out


class _Walker:
    """One resumable kernel walk over the subtree below a fixed prefix."""

    def __init__(self, d: Fraction, prefix, max_len: int, split: int = 0,
                 task_cap: int = 0, trace: int = 0):
        self.num, self.den = d.numerator, d.denominator
        self.max_len = max_len
        self.split = split
        cap = min(max(len(prefix) + 64, 512), max_len + 8)
        self.buf = _Buffers(cap_len=cap)
        self.buf.load_prefix(prefix)
        self.floor = len(prefix)
        self.reg = np.zeros(8, dtype=np.int64)
        self.reg[K.R_N] = self.floor + 1
        self.buf.ensure(self.floor + 1)
        self.buf.w[self.floor + 1] = 0
        self.wit = np.full((MAX_WITNESSES, 0), -1, dtype=np.int8)
        self.tasks = np.zeros((task_cap, max(split, 1)), dtype=np.int8)
        self.ring = np.full((trace, 0), -1, dtype=np.int8)
        self.ring_len = np.zeros(max(trace, 1), dtype=np.int64)

    def step(self, budget: int) -> int:
        b = self.buf
        while True:
            self.wit = _widen(self.wit, b.cap_len)
            self.ring = _widen(self.ring, b.cap_len)
            status = K.dfs(self.reg, self.floor, budget, self.max_len, self.split, self.num,
                           self.den, b.w, b.blk, b.o_i, b.o_d, b.o_st, b.o_off, b.o_cnt,
                           b.c_pos, b.c_off, b.c_cnt, b.first0, b.first1, b.tmp,
                           self.wit, self.tasks, self.ring, self.ring_len)
            if status in (K.GROW_LEN, K.GROW_OPEN, K.GROW_CLOSED):
                b.grow(status)
                continue
            return status

    @property
    def nodes(self) -> int:
        return int(self.reg[K.R_NODES])

    @property
    def best(self) -> int:
        return int(self.reg[K.R_BEST])

    def current_word(self) -> str:
        n = int(self.reg[K.R_N])
        return "".join("01"[int(c)] for c in self.buf.w[1 : n + 1])

    def witnesses(self) -> list[Word]:
        out = []
        for row in self.wit[: int(self.reg[K.R_WIT])]:
            out.append(Word(tuple(int(c) for c in row[: self.best])))
        return out

    def task_prefixes(self) -> list[tuple[int, ...]]:
        return [tuple(int(c) for c in row) for row in self.tasks[: int(self.reg[K.R_TASKS])]]

    def last_words(self) -> list[Word]:
        """Most recently evaluated words, oldest first."""
        size = self.ring.shape[0]
        total = int(self.reg[K.R_TRACE])
        out = []
        for k in range(max(0, total - size), total):
            slot = k % size
            n = int(self.ring_len[slot])
            out.append(Word(tuple(int(c) for c in self.ring[slot, :n])))
        return out


def _run_subtree(args) -> tuple[int, int, list[str], int, str]:
    d, prefix, max_len, max_nodes = args
    walker = _Walker(d, prefix, max_len)
    status = walker.step(max_nodes)
    return walker.nodes, walker.best, [str(w) for w in walker.witnesses()], \
        int(walker.reg[K.R_TIES]), _reason(status)


def _reason(status: int) -> str:
    return {K.DONE: "done", K.BUDGET: "max_nodes", K.MAX_LEN: "max_len"}[status]


def search_nd(
    d,
    max_len: int = DEFAULT_MAX_LEN,
    max_nodes: int = DEFAULT_MAX_NODES,
    progress: Optional[ProgressFn] = None,
    progress_every: int = PROGRESS_EVERY,
    snapshot: Optional[str] = None,
    jobs: int = 1,
    split_depth: int = 12,
    truncate_at: Optional[int] = None,
    trace: int = 0,
) -> SearchResult:
    """Compute N_d by walking every word starting with 0 whose prefixes all satisfy P_d.

    ``tree_size`` counts P_d evaluations, including the pruned leaves.  The
    result is conclusive only if the walk ran out of words; tripping
    ``max_len`` or ``max_nodes`` returns the partial N_d and tree size.

    ``truncate_at`` makes words of that length leaves: they are evaluated
    but never extended, and the walk still counts as conclusive.  ``trace``
    keeps the last few evaluated words in ``SearchResult.last_words``.

    With ``jobs > 1`` the words of length ``split_depth`` that satisfy P_d
    become independent subtree tasks; node counts add and N_d is the maximum,
    so the result does not depend on scheduling.  ``max_nodes`` then bounds
    each task rather than the total.
    """
    if isinstance(d, str):
        d = parse_threshold(d)
    d = Fraction(d)
    if d < 0:
        # d = 0 is allowed: P_0 always holds and the guards decide termination
        raise ValueError(f"threshold must be nonnegative, got {d}")
    if d.numerator >= _KERNEL_LIMIT or d.denominator >= _KERNEL_LIMIT:
        raise ValueError(f"threshold {d} has too large a numerator/denominator")
    if max_len < 1 or max_nodes < 1:
        raise ValueError("guards must be positive")

    t0 = time.perf_counter()
    # the root word "0" trivially satisfies P_d
    nodes, best, ties = 1, 1, 1
    longest = [Word((0,))]
    if max_len <= 1:
        return SearchResult(d, 1, 1, False, longest, 1, time.perf_counter() - t0, "max_len")

    if truncate_at is not None:
        if truncate_at < 1:
            raise ValueError("truncate_at must be positive")
        if truncate_at == 1:
            return SearchResult(d, 1, 1, True, longest, 1, time.perf_counter() - t0)
        split, task_cap = truncate_at, 0
    elif jobs > 1 and 1 < split_depth < max_len:
        split = split_depth
        task_cap = 1 << (split_depth - 1)
    else:
        split, task_cap = 0, 0
    walker = _Walker(d, (0,), max_len, split=split, task_cap=task_cap, trace=trace)
    reason = "done"
    while True:
        budget = min(progress_every, max_nodes - nodes - walker.nodes)
        if budget <= 0:
            reason = "max_nodes"
            break
        status = walker.step(budget)
        if progress is not None or snapshot is not None:
            word = walker.current_word()
            total = nodes + walker.nodes
            nd = max(best, walker.best)
            if progress is not None:
                elapsed = time.perf_counter() - t0
                progress(word, total, nd, total / elapsed if elapsed else 0.0)
            if snapshot is not None:
                write_snapshot(snapshot, word, total, nd)
        if status == K.BUDGET:
            continue
        reason = _reason(status)
        break

    nodes += walker.nodes
    results = [(walker.best, walker.witnesses(), int(walker.reg[K.R_TIES]))]
    if task_cap and reason == "done":
        prefixes = walker.task_prefixes()
        log.info("split at depth %d into %d subtree tasks", split, len(prefixes))
        args = [(d, p, max_len, max(1, max_nodes - nodes)) for p in prefixes]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for t_nodes, t_best, t_wit, t_ties, t_reason in pool.map(_run_subtree, args):
                nodes += t_nodes
                results.append((t_best, [as_word(x) for x in t_wit], t_ties))
                if t_reason != "done" and reason == "done":
                    reason = t_reason

    for r_best, r_wit, r_ties in results:
        if r_best > best:
            best, longest, ties = r_best, [], 0
        if r_best == best and r_best > 1:
            longest.extend(r_wit)
            ties += r_ties
    longest = sorted(set(longest))[:MAX_WITNESSES]
    elapsed = time.perf_counter() - t0
    return SearchResult(d, best, nodes, reason == "done", longest, ties, elapsed, reason,
                        walker.last_words() if trace else [])


@dataclass
class LongestReport:
    word: Word
    d: Fraction
    verdict: PdVerdict
    ext0: PdVerdict
    ext1: PdVerdict

    @property
    def maximal(self) -> bool:
        return self.verdict.holds and not self.ext0.holds and not self.ext1.holds


def verify_longest(w: WordLike, d) -> LongestReport:
    """Check that ``w`` satisfies P_d while neither one-letter extension does."""
    w = as_word(w)
    if isinstance(d, str):
        d = parse_threshold(d)
    return LongestReport(w, Fraction(d), check_pd(w, d), check_pd(w + "0", d), check_pd(w + "1", d))
