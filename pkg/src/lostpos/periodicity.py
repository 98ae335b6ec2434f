"""Periods, primitivity, Lyndon words and the literal runs enumerator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lostpos.core import Order, Word, WordLike, as_word

RHO_MAX_N = 24


@dataclass(frozen=True, order=True)
class Run:
    start: int
    end: int
    period: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def border_array(letters) -> list[int]:
    """Failure function: ``b[k]`` is the longest proper border of ``letters[:k]``."""
    n = len(letters)
    b = [0] * (n + 1)
    k = 0
    for q in range(1, n):
        while k and letters[q] != letters[k]:
            k = b[k]
        if letters[q] == letters[k]:
            k += 1
        b[q + 1] = k
    return b


def least_period(w: WordLike) -> int:
    w = as_word(w)
    if not len(w):
        raise ValueError("least_period needs a nonempty word")
    return len(w) - border_array(w.letters)[-1]


def is_period(w: WordLike, p: int) -> bool:
    if p <= 0:
        raise ValueError(f"period must be positive, got {p}")
    a = as_word(w).letters
    return all(a[i] == a[i + p] for i in range(len(a) - p))


def is_primitive(w: WordLike) -> bool:
    w = as_word(w)
    p = least_period(w)
    return p == len(w) or len(w) % p != 0


def is_lyndon(w: WordLike, o: Order) -> bool:
    """True iff ``w`` is strictly ``o``-smaller than each nontrivial rotation.

    Only equal-length words are compared, so the prefix convention of
    :func:`lostpos.core.compare` plays no role.
    """
    a = as_word(w).letters
    if not a:
        raise ValueError("is_lyndon needs a nonempty word")
    key = [o.key(c) for c in a]
    for k in range(1, len(a)):
        if key[k:] + key[:k] <= key:
            return False
    return True


def lyndon_scan(a, start: int, o: Order) -> tuple[int, int]:
    """Duval scan of ``a[start:]`` (0-based).

    Returns ``(period, stop)``: the longest ``o``-Lyndon prefix has length
    ``period`` and ``a[start:stop]`` is the longest prefix with that period.
    """
    x = int(o)
    n = len(a)
    j, k = start, start + 1
    while k < n:
        cj, ck = a[j] ^ x, a[k] ^ x
        if cj > ck:
            break
        j = start if cj < ck else j + 1
        k += 1
    return k - j, k


def longest_lyndon_end(w: WordLike, i: int, o: Order) -> int:
    """Largest ``j`` such that ``w[i..j]`` is ``o``-Lyndon."""
    w = as_word(w)
    if not 1 <= i <= len(w):
        raise ValueError(f"position {i} outside 1..{len(w)}")
    period, _ = lyndon_scan(w.letters, i - 1, o)
    return i - 1 + period


def enumerate_runs(w: WordLike) -> list[Run]:
    """All runs of ``w`` straight from the definition, sorted by (start, end).

    Quadratic: for every start the least period of each extension comes from
    an incrementally grown failure function.
    """
    a = as_word(w).letters
    n = len(a)
    runs = []
    for s in range(n):
        # failure function of a[s:e+1], grown one letter at a time
        b = [0, 0]
        k = 0
        for e in range(s + 1, n):
            q = e - s
            while k and a[e] != a[s + k]:
                k = b[k]
            if a[e] == a[s + k]:
                k += 1
            b.append(k)
            length = q + 1
            p = length - k
            if length < 2 * p:
                continue
            if s > 0 and a[s - 1] == a[s - 1 + p]:
                continue
            if e < n - 1 and a[e + 1] == a[e + 1 - p]:
                continue
            runs.append(Run(s + 1, e + 1, p))
    runs.sort()
    return runs


def count_runs(w: WordLike) -> int:
    from lostpos._kernels import count_runs_array

    a = np.frombuffer(bytes(as_word(w).letters), dtype=np.int8)
    return int(count_runs_array(a, len(a)))


def rho_max(n: int) -> tuple[int, list[Word]]:
    """Maximum number of runs over binary words of length ``n``.

    Only words starting with 0 are enumerated; complementing gives the rest,
    so every returned witness starts with 0.
    """
    if not 1 <= n <= RHO_MAX_N:
        cost = 2 ** (n - 1) if n >= 1 else 0
        raise ValueError(
            f"rho_max supports 1 <= n <= {RHO_MAX_N}; n={n} would need "
            f"{cost:,} word evaluations"
        )
    from lostpos._kernels import run_counts_all

    counts = run_counts_all(n)
    best = int(counts.max())
    witnesses = []
    for mask in np.flatnonzero(counts == best):
        bits = [(int(mask) >> (n - 1 - t)) & 1 for t in range(n)]
        witnesses.append(Word(tuple(bits)))
    witnesses.sort()
    return best, witnesses
