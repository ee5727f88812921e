"""Combinatorial knot names: parsing, ordering, relabeling, composites."""
from __future__ import annotations

import pytest

from knotcensus.codes import (
    Name,
    NameError_,
    canonicalize,
    compare_names,
    format_name,
    is_connected_sum,
    make_name,
    name_variants,
    parse_name,
    to_gauss_word,
)

UNKNOT = "{}"
TREFOIL = "{(1,4),(3,6),(5,2)}"
FIG8 = "{(1,4),(3,6),(5,8),(7,2)}"
GRANNY = "{(1,4),(3,6),(5,2),(7,10),(9,12),(11,8)}"
MIXED8 = "{(1,4),(3,8),(5,12),(7,2),(14,9),(11,6),(16,13),(10,15)}"


# ---------------------------------------------------------------------------
# parsing and formatting
# ---------------------------------------------------------------------------

def test_parse_unknot():
    nm = parse_name(UNKNOT)
    assert nm.n == 0
    assert nm.evens == ()
    assert nm.over == ()


def test_parse_trefoil_fields():
    nm = parse_name(TREFOIL)
    assert nm.n == 3
    assert nm.evens == (4, 6, 2)
    assert nm.over == (True, True, True)


def test_parse_mixed_overcrossings():
    # a pair printed even-first records an undercrossing at its odd label
    nm = parse_name(MIXED8)
    assert nm.over == (True, True, True, True, False, True, False, False)


def test_format_round_trip():
    for text in (UNKNOT, TREFOIL, FIG8, GRANNY, MIXED8):
        assert format_name(parse_name(text)) == text


def test_parse_rejects_unbalanced_braces():
    with pytest.raises(NameError_):
        parse_name("{(1,4),(3,6)")


def test_parse_rejects_undercrossing_at_label_one():
    # the mirror quotient fixes the first pair to be an overcrossing
    with pytest.raises(NameError_):
        parse_name("{(2,1)}")


def test_parse_rejects_bad_labels():
    with pytest.raises(NameError_):
        parse_name("{(1,3)}")  # partner must be even
    with pytest.raises(NameError_):
        parse_name("{(1,4),(3,4)}")  # repeated even label


def test_make_name_validates_even_permutation():
    with pytest.raises(NameError_):
        make_name((3, 4), (True, True))
    with pytest.raises(NameError_):
        make_name((4, 6), (True,))  # over flags must match pair count
    nm = make_name((4, 6, 2), (True, True, True))
    assert nm == parse_name(TREFOIL)


# ---------------------------------------------------------------------------
# preference order
# ---------------------------------------------------------------------------

def test_compare_prefers_fewer_crossings():
    assert compare_names(parse_name(UNKNOT), parse_name(TREFOIL)) == -1
    assert compare_names(parse_name(TREFOIL), parse_name(FIG8)) == -1
    assert compare_names(parse_name(FIG8), parse_name(TREFOIL)) == 1


def test_compare_is_reflexive_zero():
    nm = parse_name(TREFOIL)
    assert compare_names(nm, nm) == 0


def test_compare_prefers_more_overcrossings_at_equal_evens():
    all_over = make_name((4, 8, 12, 2, 10, 6), (True,) * 6)
    one_under = make_name((4, 8, 12, 2, 10, 6), (True, True, False, True, True, True))
    assert compare_names(all_over, one_under) == -1


def test_names_sort_via_key(knot_table):
    # Name.key() realizes the same total order as compare_names
    names = [parse_name(text) for _, _, text in knot_table[:40]]
    by_key = sorted(names, key=lambda nm: nm.key())
    for a, b in zip(by_key, by_key[1:]):
        assert compare_names(a, b) <= 0


def test_reference_table_is_preference_sorted(knot_table):
    # the published listing is ascending in the preference order, apart from
    # the duplicated-name row 122 which repeats row 120's name verbatim
    from tests.conftest import DUPLICATED_NAME_ROW

    prev = None
    for order, _, text in knot_table:
        nm = parse_name(text)
        if prev is not None and order != DUPLICATED_NAME_ROW:
            assert compare_names(prev, nm) == -1, f"order {order} out of place"
        if order != DUPLICATED_NAME_ROW:
            prev = nm


# ---------------------------------------------------------------------------
# relabeling variants and the canonical representative
# ---------------------------------------------------------------------------

def test_trefoil_is_canonical_and_symmetric():
    nm = parse_name(TREFOIL)
    assert canonicalize(nm) == nm
    assert set(name_variants(nm)) == {nm}


def test_canonicalize_constant_on_variants():
    for text in (FIG8, GRANNY, MIXED8):
        nm = parse_name(text)
        canon = canonicalize(nm)
        for variant in name_variants(nm):
            assert canonicalize(variant) == canon


def test_canonicalize_is_idempotent(knot_table):
    for _, _, text in knot_table[:60]:
        nm = parse_name(text)
        assert canonicalize(canonicalize(nm)) == canonicalize(nm)


def test_reference_names_are_canonical(knot_table):
    for order, _, text in knot_table:
        nm = parse_name(text)
        assert canonicalize(nm) == nm, f"order {order} not canonical"


# ---------------------------------------------------------------------------
# composite detection
# ---------------------------------------------------------------------------

def test_connected_sum_detection():
    assert not is_connected_sum(parse_name(UNKNOT))
    assert not is_connected_sum(parse_name(TREFOIL))
    assert not is_connected_sum(parse_name(FIG8))
    assert is_connected_sum(parse_name(GRANNY))


def test_reference_names_are_prime(knot_table):
    for order, _, text in knot_table:
        assert not is_connected_sum(parse_name(text)), f"order {order} composite"


# ---------------------------------------------------------------------------
# traversal words
# ---------------------------------------------------------------------------

def test_gauss_word_examples():
    assert to_gauss_word(parse_name(UNKNOT)) == ()
    assert to_gauss_word(parse_name(TREFOIL)) == (1, -3, 2, -1, 3, -2)
    assert to_gauss_word(parse_name(FIG8)) == (1, -4, 2, -1, 3, -2, 4, -3)


def test_gauss_word_shape(knot_table):
    # each crossing appears exactly once positively and once negatively
    for _, crossings, text in knot_table[:50]:
        word = to_gauss_word(parse_name(text))
        assert len(word) == 2 * crossings
        assert sorted(abs(x) for x in word) == sorted(
            list(range(1, crossings + 1)) * 2)
        assert sorted(x for x in word if x > 0) == list(range(1, crossings + 1))
