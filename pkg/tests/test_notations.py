"""
Tests for braid words, Markov moves and closed self-avoiding lattice walks.
"""

import random
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.notations import (
    BraidWord,
    LatticeWalk,
    MarkovKind,
    RewriteRule,
    SawMove,
    braid_components,
    braid_is_connected_sum_candidate,
    braid_rewrite,
    free_reduce,
    markov_move,
    parse_int_sequence,
    same_closed_walk,
    saw_move,
    saw_reparametrize,
    saw_validate,
)
from utils.errors import CannotDestabilizeError, MoveBlockedError, ParseError, PatternMismatchError

SQUARE = LatticeWalk.of([1, 2, -1, -2])
BIG_SQUARE = LatticeWalk.of([1, 1, 2, 2, -1, -1, -2, -2])


# ==================== Braid Words ====================

def test_parse_int_sequence():
    assert parse_int_sequence("1, -2 3") == [1, -2, 3]
    with pytest.raises(ParseError):
        parse_int_sequence("1 a")


def test_braid_word_validation():
    assert BraidWord.of([1, -2]).strands == 3
    assert str(BraidWord(2, ())) == "B2: (empty)"
    with pytest.raises(ParseError):
        BraidWord(2, (2,))
    with pytest.raises(ParseError):
        BraidWord(0)


def test_braid_components():
    assert braid_components(BraidWord.of([1, 1, 1])) == 1
    assert braid_components(BraidWord.of([1, 1])) == 2
    assert braid_components(BraidWord(3, ())) == 3
    assert braid_components(BraidWord.of([1, -2, 1, -2])) == 1


def test_free_reduce():
    assert free_reduce(BraidWord.of([1, 2, -2, -1, 1])).letters == (1,)


def test_rewrite_rules():
    assert braid_rewrite(BraidWord.of([1, -1, 2]), RewriteRule.FREE_CANCEL, 0).letters == (2,)
    assert braid_rewrite(BraidWord.of([1, 3]), RewriteRule.FAR_COMMUTE, 0).letters == (3, 1)
    assert braid_rewrite(BraidWord.of([1, 2, 1]), RewriteRule.BRAID_RELATION, 0).letters == (2, 1, 2)
    assert braid_rewrite(BraidWord.of([-2, -1, -2]), "braid_relation", 0).letters == (-1, -2, -1)


@pytest.mark.parametrize(
    "letters,rule,pos",
    [
        ([1, 1], RewriteRule.FREE_CANCEL, 0),
        ([1, 2], RewriteRule.FAR_COMMUTE, 0),
        ([1, 2, -1], RewriteRule.BRAID_RELATION, 0),
        ([1, 2, 1], RewriteRule.BRAID_RELATION, 1),
        ([1, -1], RewriteRule.FREE_CANCEL, -1),
    ],
)
def test_rewrite_mismatch(letters, rule, pos):
    with pytest.raises(PatternMismatchError):
        braid_rewrite(BraidWord.of(letters), rule, pos)


def test_markov_stabilize_and_destabilize():
    w = BraidWord(2, (1,))
    stabilized = markov_move(w, MarkovKind.STABILIZE, 1)
    assert stabilized == BraidWord(3, (1, 2))
    assert markov_move(w, MarkovKind.STABILIZE, -1) == BraidWord(3, (1, -2))
    assert markov_move(stabilized, MarkovKind.DESTABILIZE) == w
    assert markov_move(w, MarkovKind.DESTABILIZE) == BraidWord(1, ())


def test_markov_destabilize_blocked():
    for w in (BraidWord(3, (1, 2, 2)), BraidWord(2, (1, 1)), BraidWord(1, ()), BraidWord(3, (2, 1))):
        with pytest.raises(CannotDestabilizeError):
            markov_move(w, MarkovKind.DESTABILIZE)


def test_markov_conjugate():
    w = BraidWord(3, (1, 2))
    assert markov_move(w, MarkovKind.CONJUGATE, [2]).letters == (2, 1)
    assert markov_move(BraidWord(2, (1, 1, 1)), MarkovKind.CONJUGATE, [1]).letters == (1, 1, 1)
    with pytest.raises(ValueError):
        markov_move(w, MarkovKind.CONJUGATE, BraidWord(4, (3,)))
    with pytest.raises(ValueError):
        markov_move(w, MarkovKind.STABILIZE, 2)


def test_connected_sum_candidate():
    assert braid_is_connected_sum_candidate(BraidWord.of([1, 1, 1, 2, 2, 2])) is None
    assert braid_is_connected_sum_candidate(BraidWord.of([1, 1, 1, 2])) == 2
    assert braid_is_connected_sum_candidate(BraidWord.of([1, 1, 1, 2, 3, 3, 3])) == 2
    assert braid_is_connected_sum_candidate(BraidWord.of([1, 1, 1])) is None


def test_markov_moves_preserve_components():
    rng = random.Random(3)
    for _ in range(50):
        strands = rng.randint(2, 4)
        w = BraidWord(strands, tuple(rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(0, 6))))
        components = braid_components(w)
        for _ in range(10):
            choice = rng.randrange(4)
            if choice == 0:
                if w.strands > 1:
                    w = markov_move(w, MarkovKind.CONJUGATE, [rng.choice([1, -1]) * rng.randint(1, w.strands - 1)])
            elif choice == 1:
                w = markov_move(w, MarkovKind.STABILIZE, rng.choice([1, -1]))
            elif choice == 2:
                try:
                    w = markov_move(w, MarkovKind.DESTABILIZE)
                except CannotDestabilizeError:
                    pass
            else:
                rule = rng.choice(list(RewriteRule))
                try:
                    w = braid_rewrite(w, rule, rng.randrange(max(len(w.letters), 1)))
                except PatternMismatchError:
                    pass
            assert braid_components(w) == components


# ==================== Lattice Walks ====================

def test_saw_validate():
    assert saw_validate(SQUARE)
    assert saw_validate(BIG_SQUARE)
    assert saw_validate(LatticeWalk.of([1, 2, 3, -1, -2, -3]))
    assert not saw_validate(LatticeWalk.of([1, 1, -1, -1]))
    assert not saw_validate(LatticeWalk.of([1, -1]))
    assert not saw_validate(LatticeWalk.of([1, 2, -1, -1]))
    assert not saw_validate(LatticeWalk.of([1, -1, 1, -1]))
    assert not saw_validate(LatticeWalk.of([1, 4, -1, -4]))


def test_saw_reparametrize():
    assert saw_reparametrize(SQUARE, 1).steps == (2, -1, -2, 1)
    assert saw_reparametrize(SQUARE, -1).steps == (-2, 1, 2, -1)
    assert same_closed_walk(SQUARE, saw_reparametrize(SQUARE, 3))
    assert not same_closed_walk(SQUARE, BIG_SQUARE)


def test_saw_transpose():
    moved = saw_move(BIG_SQUARE, SawMove.TRANSPOSE, 2)
    assert moved.steps == (1, 2, 1, 2, -1, -1, -2, -2)
    with pytest.raises(MoveBlockedError):
        saw_move(BIG_SQUARE, SawMove.TRANSPOSE, 1)


def test_saw_excise_and_insert():
    walk = LatticeWalk.of([1, 2, 2, -1, -2, -2])
    excised = saw_move(walk, SawMove.EXCISE, 3)
    assert excised == SQUARE
    assert saw_move(excised, SawMove.INSERT, 3, direction=2) == walk


def test_saw_moves_blocked():
    with pytest.raises(MoveBlockedError):
        saw_move(BIG_SQUARE, SawMove.EXCISE, 1)
    with pytest.raises(MoveBlockedError):
        saw_move(SQUARE, SawMove.INSERT, 3, direction=1)
    with pytest.raises(MoveBlockedError):
        saw_move(SQUARE, SawMove.INSERT, 3)
    with pytest.raises(MoveBlockedError):
        saw_move(SQUARE, SawMove.TRANSPOSE, 0)
    # The new points would land on the square itself
    with pytest.raises(MoveBlockedError):
        saw_move(SQUARE, SawMove.INSERT, 1, direction=2)
