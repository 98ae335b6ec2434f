import pytest

from lostpos.core import Word
from lostpos.periodicity import enumerate_runs
from lostpos.positions import (
    CHARGED,
    LEFT_OPEN,
    LOST,
    RIGHT_OPEN,
    NotARunError,
    analyze,
    classify,
    image_interval,
    is_run_interval,
    lost_positions,
    position_params,
    preferred_order,
    preimages,
    preimages_by_roots,
    representative,
)
import props
from conftest import SAMPLE_WORD, PERIOD4_WORD, words_up_to


def _grid(L, D, ST, E):
    return {i: (L[k], D[k], ST[k], E[k]) for k, i in enumerate(range(2, 2 + len(L)))}


SAMPLE_GRID = _grid(
    [2, 4, 7, 17, 6, 7, 9, 11, 14, 11, 17, 14, 17, 15, 16, 17],
    [1, 2, 4, 13, 1, 1, 2, 3, 5, 1, 6, 2, 4, 1, 1, 1],
    [1, 2, 3, 4, 5, 5, 7, 8, 7, 10, 10, 11, 13, 15, 15, 15],
    [2, 5, 9, 17, 7, 7, 10, 13, 16, 11, 17, 15, 17, 17, 17, 17],
)

SAMPLE_PLUS_1_GRID = _grid(
    [2, 4, 7, 17, 6, 7, 9, 11, 14, 11, 17, 14, 17, 18, 16, 17, 18],
    [1, 2, 4, 13, 1, 1, 2, 3, 5, 1, 6, 2, 4, 4, 1, 1, 1],
    [1, 2, 3, 4, 5, 5, 7, 8, 7, 10, 10, 11, 13, 13, 15, 15, 18],
    [2, 5, 9, 18, 7, 7, 10, 13, 16, 11, 18, 15, 18, 18, 17, 17, 18],
)

SAMPLE_PLUS_0_GRID = _grid(
    [2, 4, 7, 18, 6, 7, 9, 11, 14, 11, 18, 14, 18, 15, 16, 17, 18],
    [1, 2, 4, 14, 1, 1, 2, 3, 5, 1, 7, 2, 5, 1, 1, 1, 1],
    [1, 2, 3, 4, 5, 5, 7, 8, 7, 10, 10, 11, 13, 15, 15, 15, 15],
    [2, 5, 9, 18, 7, 7, 10, 13, 16, 11, 18, 15, 18, 18, 18, 18, 18],
)


def _params(w):
    return {r.i: (r.L, r.D, r.ST, r.E) for r in position_params(w)}


@pytest.mark.parametrize(
    "word, grid",
    [(SAMPLE_WORD, SAMPLE_GRID), (SAMPLE_WORD + "1", SAMPLE_PLUS_1_GRID), (SAMPLE_WORD + "0", SAMPLE_PLUS_0_GRID)],
    ids=["sample", "append-1", "append-0"],
)
def test_parameter_grids(word, grid):
    assert _params(word) == grid


def test_param_letters_follow_previous_letter():
    for r in position_params(SAMPLE_WORD):
        assert r.c == 1 - int(SAMPLE_WORD[r.i - 2])


def test_short_words():
    assert position_params("0") == []
    (r,) = position_params("00")
    assert (r.i, r.L, r.D, r.ST, r.E) == (2, 2, 1, 1, 2)


def test_analyze_table(sample):
    t = analyze(sample)
    assert [r.i for r in t.rows] == list(range(2, 18))
    assert t.row(10).L == 14
    # 4 and 6 from the non-run/non-injective images, 16 inside the final 000
    assert t.positions(LOST) == [4, 6, 16]
    recs = t.as_records()
    assert recs[0]["i"] == 2 and set(recs[0]) >= {"i", "c", "L", "D", "ST", "E", "class", "subcase"}
    with pytest.raises(IndexError):
        t.row(1)


def test_analyze_rejects_empty():
    with pytest.raises(ValueError):
        analyze("")


def test_image_interval(sample):
    assert image_interval(sample, 10) == (7, 16)
    assert image_interval(sample, 4) == (3, 9)
    with pytest.raises(ValueError):
        image_interval(sample, 1)
    with pytest.raises(ValueError):
        image_interval(sample, 18)


def test_is_run_interval(sample):
    assert is_run_interval(sample, 7, 16)
    # position 4 maps to [3..9], whose least period is 4
    assert not is_run_interval(sample, 3, 9)


def test_non_injective_image(sample):
    assert image_interval(sample, 6) == image_interval(sample, 7) == (5, 7)
    assert preimages(sample, 5, 7) == [6, 7]


def test_period4_roots():
    w = PERIOD4_WORD
    assert is_run_interval(w, 1, 14)
    assert preimages(w, 1, 14) == [2, 4, 6, 8, 10]
    by_order = {}
    for i in preimages(w, 1, 14):
        by_order.setdefault(position_params(w)[i - 2].c, []).append(i)
    assert by_order == {0: [4, 8], 1: [2, 6, 10]}
    assert preferred_order(w, 1, 14) == 0
    assert representative(w, 1, 14) == 8


def test_preferred_order_errors(sample):
    with pytest.raises(NotARunError):
        preferred_order(sample, 3, 9)
    # a run that does not reach the end of the word
    with pytest.raises(NotARunError):
        preferred_order(sample, 7, 16)


def test_preferred_order_period_one():
    assert preferred_order("0100", 3, 4) == 0
    assert preferred_order("1011", 3, 4) == 0


def test_representative_inner_run_is_max_preimage(sample):
    assert representative(sample, 7, 16) == max(preimages(sample, 7, 16))
    with pytest.raises(NotARunError):
        representative(sample, 3, 9)


def test_preimages_by_roots_agrees():
    cases = 0
    for w in words_up_to(11, start=2):
        for r in position_params(w):
            assert preimages_by_roots(w, r.ST, r.E) == preimages(w, r.ST, r.E), (w, r)
            cases += 1
    assert cases > 10000


def test_classify_sample(sample):
    labels = {r.i: k for r, k in zip(position_params(sample), classify(sample))}
    assert [i for i, k in labels.items() if k.label == LOST] == [4, 6, 16]
    assert labels[16].subcase == "iii"
    assert labels[4].subcase == "i" and labels[6].subcase == "ii"
    charged = sorted(i for i, k in labels.items() if k.label == CHARGED)
    assert len(charged) == len(enumerate_runs(sample))
    assert labels[2].label == CHARGED


def test_left_open():
    # position 2 maps to [1..5] = 01001, which has period 3
    kinds = {r.i: k.label for r, k in zip(position_params("010011"), classify("010011"))}
    assert kinds[2] == LEFT_OPEN


def test_classify_right_open_subcases():
    kinds = {r.i: (k.label, k.subcase) for r, k in zip(position_params("0111"), classify("0111"))}
    assert kinds == {2: (RIGHT_OPEN, "bc"), 3: (LOST, "iii"), 4: (CHARGED, None)}
    # 0010 ends in the non-run [3..4]
    kinds = {r.i: (k.label, k.subcase) for r, k in zip(position_params("0010"), classify("0010"))}
    assert kinds[4] == (RIGHT_OPEN, "ba")


@pytest.mark.parametrize(
    "word, lost",
    [
        (SAMPLE_WORD, [4, 6, 16]),
        ("0110", []),
        ("0111", [3]),
        (PERIOD4_WORD + "1010", [2, 6]),
        (PERIOD4_WORD + "01", [4]),
        ("0", []),
        ("000", [2]),
    ],
)
def test_lost_examples(word, lost):
    assert lost_positions(word) == lost
    assert lost_positions(word, fast=True) == lost


def test_period4_extensions_are_inner_lost():
    for suffix, pos in (("1010", [2, 6]), ("01", [4])):
        w = PERIOD4_WORD + suffix
        kinds = {r.i: k for r, k in zip(position_params(w), classify(w))}
        assert all(kinds[i].label == LOST and kinds[i].subcase == "ii" for i in pos), suffix


def test_lost_excludes_ends():
    for w in words_up_to(10, start=2):
        lost = lost_positions(w)
        assert 1 not in lost and len(w) not in lost or not lost


def test_word_properties_small():
    assert props.check_exhaustive_positions(10) == 2046


def test_random_lost_small():
    assert props.check_random_lost_equivalence(300, 64) == 300


def test_block_interiors_small():
    assert props.check_random_block_interiors(300) == 300


def test_shortcut_small():
    assert props.check_shortcut_equivalence(12) > 0


def test_parameter_stability():
    assert props.check_parameter_stability(300) == 300


def test_lost_survives_extension_small():
    assert props.check_lost_survives_extension(6, 2) > 0


def test_complement_invariance_small():
    props.check_complement_invariance(10)


def test_as_word_inputs():
    assert lost_positions(Word.of([0, 0, 0])) == lost_positions("000")
