"""Bundled data files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from lostpos.core import Word, parse_word


def wmax_path() -> Path:
    """The published 1025-letter longest word satisfying P_19.3."""
    return Path(str(resources.files("lostpos") / "data" / "wmax_19_3.txt"))


def wmax() -> Word:
    return parse_word(wmax_path().read_text())
