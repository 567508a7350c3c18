"""
Tests for Dowker pair-set codes: validation, text forms, canonical forms
and connected-sum decomposition.
"""

import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import (
    UNKNOT,
    DowkerSet,
    canonicalize,
    closed_intervals,
    code_key,
    detect_connected_sum,
    dt_sequence,
    format_code,
    from_gauss_sequence,
    is_canonical,
    is_prime_code,
    mirror,
    orbit,
    parse_code,
    prime_factors,
    relabel,
    split_at,
    to_gauss_sequence,
    validate_set,
)
from utils.errors import DuplicateLabelError, InvalidCodeError, LabelOutOfRangeError, ParseError

TREFOIL = validate_set([(1, 4), (3, 6), (5, 2)])
DOUBLE_TREFOIL = validate_set([(1, 4), (3, 6), (5, 2), (7, 10), (9, 12), (11, 8)])


def test_validate_set_accepts_a_partition():
    assert TREFOIL.n == 3
    assert TREFOIL.two_n == 6
    assert TREFOIL.pairs == ((1, 4), (3, 6), (5, 2))


def test_validate_set_rejects_duplicates_and_range():
    with pytest.raises(DuplicateLabelError):
        validate_set([(1, 2), (2, 3)])
    with pytest.raises(LabelOutOfRangeError):
        validate_set([(1, 5), (2, 3)])
    with pytest.raises(ParseError):
        validate_set([(1, 2, 3)])


def test_parse_code_both_text_forms():
    assert parse_code("3 ; 1,4 3,6 5,2") == TREFOIL
    assert parse_code("1,4 3,6 5,2") == TREFOIL
    assert parse_code("(1,4) (3,6) (5,2)") == TREFOIL
    assert parse_code("") == UNKNOT
    assert format_code(TREFOIL) == "3 ; 1,4 3,6 5,2"
    assert format_code(UNKNOT) == "0 ;"


def test_parse_code_errors():
    with pytest.raises(ParseError):
        parse_code("2 ; 1,4 3,6 5,2")
    with pytest.raises(ParseError):
        parse_code("1-4")
    with pytest.raises(InvalidCodeError):
        parse_code("1,4 1,2")


def test_dt_sequence_signs_follow_the_odd_label():
    assert dt_sequence(TREFOIL) == (4, 6, 2)
    assert dt_sequence(mirror(TREFOIL)) == (-4, -6, -2)
    assert dt_sequence(validate_set([(1, 3), (2, 4)])) is None
    assert dt_sequence(UNKNOT) == ()


def test_relabel_shift_by_two_fixes_the_trefoil():
    assert relabel(TREFOIL, 2, 1) == TREFOIL
    back = relabel(relabel(TREFOIL, 1, -1), 1, -1)
    assert back.n == 3


def test_orbit_size():
    assert len(list(orbit(TREFOIL))) == 6 * 2 * 2
    assert len(list(orbit(UNKNOT))) == 1


def test_canonicalize_is_least_over_the_orbit():
    canon = canonicalize(validate_set([(3, 6), (5, 2), (1, 4)]))
    assert canon.text == "3 ; 1,4 3,6 5,2"
    assert is_canonical(TREFOIL)
    for _, pairs in orbit(TREFOIL):
        moved = DowkerSet.from_pairs(pairs)
        assert canonicalize(moved) == canon
        assert code_key(moved) >= canon.key


def test_mirror_trefoil_has_same_canonical_form():
    assert canonicalize(mirror(TREFOIL)) == canonicalize(TREFOIL)


def test_canonical_keys_order_by_crossing_count():
    assert canonicalize(UNKNOT) < canonicalize(TREFOIL)
    assert canonicalize(TREFOIL) < canonicalize(validate_set([(1, 4), (3, 6), (5, 8), (7, 2)]))


def test_gauss_sequence_round_trip_on_trefoil():
    seq = to_gauss_sequence(TREFOIL)
    assert seq[0] == (1, True)
    assert seq[3] == (1, False)
    assert from_gauss_sequence(seq) == TREFOIL


def test_from_gauss_sequence_rejects_unmatched_crossing():
    with pytest.raises(ValueError):
        from_gauss_sequence([("a", True), ("a", True)])


def test_prime_codes_have_no_closed_interval():
    assert closed_intervals(TREFOIL) == []
    assert detect_connected_sum(TREFOIL) == []
    assert is_prime_code(TREFOIL)
    assert is_prime_code(UNKNOT)
    assert not is_prime_code(validate_set([(1, 2)]))


def test_double_trefoil_splits_into_two_trefoils():
    assert [p.k for p in detect_connected_sum(DOUBLE_TREFOIL)] == [1, 7]
    inner, outer = split_at(DOUBLE_TREFOIL, 1, 6)
    assert inner == TREFOIL
    assert outer == TREFOIL
    factors = prime_factors(DOUBLE_TREFOIL)
    assert [canonicalize(f) for f in factors] == [canonicalize(TREFOIL)] * 2


def test_split_at_rejects_straddled_interval():
    with pytest.raises(ValueError):
        split_at(TREFOIL, 1, 2)


def test_curls_are_unknot_factors():
    assert prime_factors(validate_set([(1, 2)])) == []
    kinked = validate_set([(1, 2), (3, 6), (5, 8), (7, 4)])
    assert [canonicalize(f) for f in prime_factors(kinked)] == [canonicalize(TREFOIL)]
