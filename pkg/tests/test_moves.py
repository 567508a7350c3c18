"""
Tests for Reidemeister moves on Dowker codes and move neighborhoods.
"""

import random
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import UNKNOT, canonicalize, validate_set
from tools.drawability import Embedding, is_drawable, realize
from tools.moves import (
    MoveDescriptor,
    MoveKind,
    addition_sites,
    apply_move,
    apply_traced,
    neighbor_moves,
    neighbors,
    r1_add,
    r1_remove,
    r1_sites,
    r2_add,
    r2_remove,
    r2_sites,
    r3,
    r3_sites,
)
from utils.errors import SiteNotPresentError, UndrawableError

TREFOIL = validate_set([(1, 4), (3, 6), (5, 2)])
FIGURE_EIGHT = validate_set([(1, 4), (3, 6), (5, 8), (7, 2)])
SLIDABLE = validate_set([(1, 4), (2, 5), (3, 6)])


def test_r1_add_on_unknot():
    assert r1_add(UNKNOT, 1).pairs == ((1, 2),)
    assert r1_add(UNKNOT, 1, over_first=False).pairs == ((2, 1),)


def test_r1_add_then_remove_restores_the_code():
    for slot in range(1, TREFOIL.two_n + 2):
        kinked = r1_add(TREFOIL, slot)
        assert kinked.n == 4
        assert canonicalize(r1_remove(kinked, slot)) == canonicalize(TREFOIL)
    assert r1_remove(r1_add(TREFOIL, 1), 1) == TREFOIL


def test_r1_remove_requires_a_kink():
    with pytest.raises(SiteNotPresentError):
        r1_remove(TREFOIL, 1)
    assert r1_sites(TREFOIL) == []


def test_r2_add_and_remove_on_unknot():
    bigon = r2_add(UNKNOT, 1, 1, parallel=False)
    assert bigon.pairs == ((1, 4), (2, 3))
    assert r2_remove(bigon, 1, 3) == UNKNOT
    assert r2_sites(bigon) == [MoveDescriptor(MoveKind.R2_REMOVE, (1, 3), parallel=False)]


def test_r2_remove_inverse_descriptor_replays():
    poked = r2_add(TREFOIL, 2, 5, parallel=True, over_first=True)
    assert poked.n == 5
    for d in r2_sites(poked):
        traced = apply_traced(poked, d)
        assert canonicalize(apply_move(traced.code, traced.inverse)) == canonicalize(poked)


def test_r2_remove_rejects_alternating_bigon():
    # Every bigon of the alternating trefoil has one strand over and under
    assert r2_sites(TREFOIL) == []
    with pytest.raises(SiteNotPresentError):
        r2_remove(TREFOIL, 1, 4)


def test_r3_on_alternating_trefoil_is_blocked():
    with pytest.raises(SiteNotPresentError):
        r3(TREFOIL, MoveDescriptor(MoveKind.R3, (1, 2, 4, 3, 5, 6)))
    assert r3_sites(realize(TREFOIL)) == []


def test_r3_slides_a_strand_over_a_crossing():
    d = MoveDescriptor(MoveKind.R3, (1, 2, 4, 3, 5, 6))
    assert len(r3_sites(realize(SLIDABLE))) >= 1
    result = r3(SLIDABLE, d)
    assert result == validate_set([(1, 6), (2, 3), (4, 5)])
    assert is_drawable(result)
    traced = apply_traced(SLIDABLE, d)
    assert traced.inverse == MoveDescriptor(MoveKind.R3, (2, 1, 3, 4, 6, 5))


def test_r3_rejects_missing_pairs():
    with pytest.raises(SiteNotPresentError):
        r3(SLIDABLE, MoveDescriptor(MoveKind.R3, (1, 2, 3, 4, 5, 6)))
    with pytest.raises(SiteNotPresentError):
        r3(SLIDABLE, MoveDescriptor(MoveKind.R3, (1, 2, 4)))


def test_move_descriptor_text():
    d = MoveDescriptor(MoveKind.R2_ADD, (1, 1), over_first=True, parallel=False)
    assert d.text == "R2_add(1,1;over,anti)"
    assert MoveDescriptor(MoveKind.R1_REMOVE, (3,)).text == "R1_remove(3)"


def test_addition_sites_respect_the_bound():
    e = realize(TREFOIL)
    assert addition_sites(e, 3) == []
    kinds = {d.kind for d in addition_sites(e, 4)}
    assert kinds == {MoveKind.R1_ADD}
    kinds = {d.kind for d in addition_sites(e, 5)}
    assert kinds == {MoveKind.R1_ADD, MoveKind.R2_ADD}


def test_neighbors_of_the_unknot():
    found = neighbors(UNKNOT, 2)
    assert canonicalize(validate_set([(1, 2)])) in found
    assert canonicalize(validate_set([(1, 4), (2, 3)])) in found
    assert canonicalize(UNKNOT) not in found


def test_neighbor_moves_stay_drawable_and_bounded():
    for code in (TREFOIL, FIGURE_EIGHT, SLIDABLE):
        for result in neighbor_moves(code, code.n + 2):
            assert result.code.n <= code.n + 2
            assert isinstance(realize(result.code), Embedding)


def test_neighbor_moves_reject_undrawable_codes():
    with pytest.raises(UndrawableError):
        neighbor_moves(validate_set([(1, 4), (3, 6), (5, 8), (7, 10), (9, 2)]), 5)


def test_removal_inverses_replay_on_random_pokes():
    rng = random.Random(7)
    for _ in range(20):
        e = realize(FIGURE_EIGHT)
        adds = [d for d in addition_sites(e, 6) if d.kind == MoveKind.R2_ADD]
        poked = apply_move(FIGURE_EIGHT, rng.choice(adds))
        for d in r2_sites(poked) + r1_sites(poked):
            traced = apply_traced(poked, d)
            assert canonicalize(apply_move(traced.code, traced.inverse)) == canonicalize(poked)
