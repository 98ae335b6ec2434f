"""Exact density thresholds, the prefix-density predicate P_d and the runs bound."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from lostpos.core import WordLike, as_word
from lostpos.positions import lost_positions

Threshold = Fraction

_LITERAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")


def parse_threshold(text: str) -> Threshold:
    """Exact rational from an integer or decimal literal, e.g. ``"19.3"`` -> 193/10."""
    s = text.strip()
    if not _LITERAL.fullmatch(s):
        raise ValueError(f"malformed threshold {text!r}")
    return Fraction(s)


@dataclass(frozen=True)
class PdVerdict:
    holds: bool
    lost: list[int] = field(default_factory=list)
    violation: Optional[int] = None


def first_violation(lost: list[int], d: Threshold) -> Optional[int]:
    """Smallest 1-based ``j`` with ``p_j - 1 < j*d``, in integer arithmetic."""
    num, den = d.numerator, d.denominator
    for j, p in enumerate(lost, start=1):
        if den * (p - 1) < num * j:
            return j
    return None


def check_pd(w: WordLike, d: Threshold) -> PdVerdict:
    if isinstance(d, str):
        d = parse_threshold(d)
    lost = lost_positions(as_word(w), fast=True)
    v = first_violation(lost, Fraction(d))
    return PdVerdict(v is None, lost, v)


def density_bound(d: Threshold) -> Fraction:
    """``1 - 1/d``, the limit bound on runs per letter implied by a finite N_d."""
    if isinstance(d, str):
        d = parse_threshold(d)
    d = Fraction(d)
    if d <= 1:
        raise ValueError(f"bound needs d > 1, got {d}")
    return 1 - 1 / d


def format_decimal(q: Fraction, digits: int = 7) -> str:
    """Exact decimal rendering, rounding half away from zero."""
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    scale = 10**digits
    n = math.floor(abs(q) * scale + Fraction(1, 2))
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"
