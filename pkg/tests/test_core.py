import functools
import itertools

import pytest

from lostpos.core import Order, Word, WordError, as_word, compare, complement, factor, parse_word
from conftest import SAMPLE_WORD, words_up_to


def test_parse_word():
    assert parse_word("0011") == Word((0, 0, 1, 1))
    assert parse_word("0 1\n1 0") == Word((0, 1, 1, 0))
    assert parse_word("\t0\r\n") == Word((0,))


def test_parse_word_names_offending_index():
    with pytest.raises(WordError, match="index 3"):
        parse_word("01a")


def test_complement():
    assert complement(0) == 1
    assert complement(1) == 0
    assert complement(complement(0)) == 0


@pytest.mark.parametrize(
    "u, v, o, expected",
    [
        ("00101", "01", Order.ZERO, -1),
        ("1", "0", Order.ONE, -1),
        ("01", "011", Order.ZERO, -1),
        ("01", "011", Order.ONE, -1),
        ("0110", "0110", Order.ONE, 0),
        ("1", "0", Order.ZERO, 1),
    ],
)
def test_compare(u, v, o, expected):
    assert compare(u, v, o) == expected


def test_compare_total_order_up_to_6():
    ws = list(words_up_to(6, start=0))
    for o in Order:
        for a in ws:
            assert compare(a, a, o) == 0
        for a, b in itertools.combinations(ws, 2):
            assert compare(a, b, o) == -compare(b, a, o) != 0
        # antisymmetric and consistent with one linear arrangement => transitive
        ordered = sorted(ws, key=functools.cmp_to_key(lambda x, y: compare(x, y, o)))
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                assert compare(a, b, o) == -1


def test_equal_length_orders_are_reverses():
    for n in range(1, 7):
        ws = [w for w in words_up_to(n) if len(w) == n]
        for u, v in itertools.combinations(ws, 2):
            c0 = compare(u, v, Order.ZERO)
            assert compare(u, v, Order.ONE) == -c0
            assert compare(u.complemented(), v.complemented(), Order.ZERO) == -c0


def test_factor():
    assert str(factor(SAMPLE_WORD, 10, 14)) == "00101"
    w = as_word(SAMPLE_WORD)
    for i in range(1, len(w) + 1):
        assert factor(w, i, i) == Word((w.at(i),))
    assert str(factor("01", 1, 2)) == "01"


@pytest.mark.parametrize("i, j", [(0, 1), (2, 1), (1, 3)])
def test_factor_rejects_out_of_range(i, j):
    with pytest.raises(WordError):
        factor("01", i, j)


def test_word_basics():
    w = as_word("0110")
    assert len(w) == 4 and str(w) == "0110" and w.at(1) == 0 and w.at(4) == 0
    assert w + "1" == as_word("01101")
    with pytest.raises(WordError):
        w.at(5)
    with pytest.raises(WordError):
        Word((0, 2))
