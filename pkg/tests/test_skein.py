"""
Tests for skein-relation evaluation (Conway and Jones polynomials).
"""

import sys
from pathlib import Path

import pytest
import sympy as sp

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import UNKNOT, mirror, validate_set
from tools.drawability import realize
from tools.invariants import T, LaurentPoly, alexander_poly
from tools.skein import (
    CONWAY,
    JONES,
    SMOOTHED,
    Z,
    GeneralizedDiagram,
    SkeinCoefficients,
    conway_to_alexander,
    skein_eval,
    unlink_value,
)
from utils.errors import SkeinDivisionByZeroError

TREFOIL = validate_set([(1, 4), (3, 6), (5, 2)])
FIGURE_EIGHT = validate_set([(1, 4), (3, 6), (5, 8), (7, 2)])
FIVE_TWO = validate_set([(1, 4), (3, 8), (5, 10), (7, 2), (9, 6)])


def test_unknot_evaluates_to_one():
    assert skein_eval(realize(UNKNOT), CONWAY) == 1
    assert skein_eval(realize(validate_set([(1, 2)])), CONWAY) == 1
    assert skein_eval(realize(validate_set([(1, 4), (2, 3)])), JONES) == 1


def test_conway_polynomials():
    assert sp.expand(skein_eval(realize(TREFOIL), CONWAY) - (Z**2 + 1)) == 0
    assert sp.expand(skein_eval(realize(FIGURE_EIGHT), CONWAY) - (1 - Z**2)) == 0


def test_conway_agrees_with_alexander():
    for code in (TREFOIL, FIGURE_EIGHT, FIVE_TWO):
        assert conway_to_alexander(skein_eval(realize(code), CONWAY)) == alexander_poly(code)


def test_jones_trefoil_and_mirror():
    right = LaurentPoly.from_dict({1: 1, 3: 1, 4: -1})
    left = LaurentPoly.from_dict({-1: 1, -3: 1, -4: -1})
    jones = LaurentPoly.from_sympy(skein_eval(realize(TREFOIL), JONES))
    jones_mirror = LaurentPoly.from_sympy(skein_eval(realize(mirror(TREFOIL)), JONES))
    assert {jones, jones_mirror} == {right, left}


def test_jones_figure_eight():
    expected = LaurentPoly.from_dict({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    assert LaurentPoly.from_sympy(skein_eval(realize(FIGURE_EIGHT), JONES)) == expected


def test_jones_at_one():
    for code in (TREFOIL, FIGURE_EIGHT, FIVE_TWO):
        assert skein_eval(realize(code), JONES).subs(T, 1) == 1


def test_unlink_value():
    a, b, c = sp.symbols("a b c")
    coeffs = SkeinCoefficients(a, b, c)
    assert unlink_value(1, coeffs) == 1
    assert sp.simplify(unlink_value(2, coeffs) - (a + b) / c) == 0
    assert unlink_value(2, CONWAY) == 0


def test_smoothing_one_crossing_splits_the_knot():
    diagram = GeneralizedDiagram.of(realize(TREFOIL))
    assert diagram.component_count == 1
    assert diagram.with_state(0, SMOOTHED).component_count == 2

    curl = GeneralizedDiagram.of(realize(validate_set([(1, 2)])))
    assert curl.with_state(0, SMOOTHED).component_count == 2


def test_descending_diagram_has_no_ascending_crossing():
    assert GeneralizedDiagram.of(realize(validate_set([(1, 2)]))).first_ascending() is None
    assert GeneralizedDiagram.of(realize(TREFOIL)).first_ascending() is not None


def test_zero_coefficients_raise():
    with pytest.raises(SkeinDivisionByZeroError):
        skein_eval(realize(TREFOIL), SkeinCoefficients(sp.Integer(1), sp.Integer(0), Z))
    with pytest.raises(SkeinDivisionByZeroError):
        skein_eval(realize(TREFOIL), SkeinCoefficients(sp.Integer(1), sp.Integer(-1), sp.Integer(0)))


def test_conway_to_alexander():
    assert conway_to_alexander(1 - Z**2).coeffs == (1, -3, 1)
    assert conway_to_alexander(Z**2 + 1).coeffs == (1, -1, 1)
    with pytest.raises(ValueError):
        conway_to_alexander(Z)
