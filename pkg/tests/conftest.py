import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lostpos.core import Word  # noqa: E402

SAMPLE_WORD = "00101110100101000"
PERIOD4_WORD = "01100110011001"


def all_words(n, first=None):
    """Every binary word of length ``n`` (optionally with a fixed first letter)."""
    if n == 0:
        yield Word(())
        return
    heads = (first,) if first is not None else (0, 1)
    for head in heads:
        for rest in itertools.product((0, 1), repeat=n - 1):
            yield Word((head,) + rest)


def words_up_to(n, first=None, start=1):
    for k in range(start, n + 1):
        yield from all_words(k, first)


@pytest.fixture
def sample():
    return Word.of(int(c) for c in SAMPLE_WORD)


@pytest.fixture(scope="session")
def d24_result():
    """The full d=24 search, run once per session (about 15 s)."""
    from lostpos.search import search_nd

    return search_nd(24, trace=16)


def tail_after_last_hit(words, d):
    """Split a trace into (last word satisfying P_d, words visited after it)."""
    from lostpos.density import check_pd

    hits = [k for k, w in enumerate(words) if check_pd(w, d).holds]
    k = hits[-1]
    return words[k], words[k + 1:]


def expected_tail(h):
    """h0, h1, then successors of h1 down to 0111."""
    from lostpos.search import next_word

    out = [h + "0", h + "1"]
    while str(out[-1]) != "0111":
        out.append(next_word(out[-1]))
    return out


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
