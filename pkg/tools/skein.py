"""
Skein Relation Evaluation.

Evaluates a one-variable skein invariant f defined by

    A·f(L+) + B·f(L-) = C·f(L0),    f(unknot) = 1

on the diagram of a Dowker code. Intermediate diagrams keep every crossing
either intact (possibly switched) or smoothed; smoothing reconnects labels
so components are tracked as cycles on the label set. A diagram whose every
remaining crossing is first met as an over-pass (components ordered by their
least label) is an unlink and evaluates to ((A+B)/C)^(components - 1).
"""

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import sympy as sp

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.drawability import Embedding, crossing_signs
from tools.invariants import LaurentPoly, T
from utils.errors import SkeinDivisionByZeroError

INTACT, SWITCHED, SMOOTHED = 0, 1, 2

Z = sp.Symbol("z")


@dataclass(frozen=True)
class SkeinCoefficients:
    A: sp.Expr
    B: sp.Expr
    C: sp.Expr
    name: str = "custom"


CONWAY = SkeinCoefficients(sp.Integer(1), sp.Integer(-1), Z, "conway")
JONES = SkeinCoefficients(1 / T, -T, sp.sqrt(T) - 1 / sp.sqrt(T), "jones")


# ==================== Generalized Diagrams ====================

@dataclass(frozen=True)
class GeneralizedDiagram:
    """
    A knot diagram with some crossings switched or smoothed.

    Attributes:
        embedding: The realized base diagram
        states: One of INTACT, SWITCHED, SMOOTHED per crossing (embedding order)
    """

    embedding: Embedding
    states: Tuple[int, ...]

    @classmethod
    def of(cls, e: Embedding) -> "GeneralizedDiagram":
        return cls(e, (INTACT,) * len(e.crossings))

    def with_state(self, index: int, state: int) -> "GeneralizedDiagram":
        states = list(self.states)
        states[index] = state
        return GeneralizedDiagram(self.embedding, tuple(states))

    def _crossing_index(self) -> Dict[int, int]:
        index = {}
        for idx, (o, u) in enumerate(self.embedding.crossings):
            index[o] = idx
            index[u] = idx
        return index

    def components(self) -> List[List[int]]:
        """
        Label cycles of the smoothed diagram, each starting at its least label.

        Smoothed crossings are recorded as unordered label pairs: arriving at
        either label continues from the other.
        """
        two_n = self.embedding.code.two_n
        if two_n == 0:
            return [[]]
        partner = self.embedding.code.partners()
        index = self._crossing_index()
        successor = {}
        for label in range(1, two_n + 1):
            nxt = label % two_n + 1
            successor[label] = partner[nxt] if self.states[index[nxt]] == SMOOTHED else nxt

        cycles = []
        seen = set()
        for start in range(1, two_n + 1):
            if start in seen:
                continue
            cycle = []
            label = start
            while label not in seen:
                seen.add(label)
                cycle.append(label)
                label = successor[label]
            cycles.append(cycle)
        return cycles

    @property
    def component_count(self) -> int:
        return len(self.components())

    def first_ascending(self) -> Optional[int]:
        """
        Index of the first remaining crossing met as an under-pass before its over-pass,
        or None when the diagram is descending.
        """
        over = self.embedding.code.over_flags()
        index = self._crossing_index()
        met = set()
        for cycle in self.components():
            for label in cycle:
                idx = index.get(label)
                if idx is None or self.states[idx] == SMOOTHED or idx in met:
                    continue
                met.add(idx)
                passes_over = over[label] != (self.states[idx] == SWITCHED)
                if not passes_over:
                    return idx
        return None


# ==================== Evaluation ====================

def _check_nonzero(value, name: str) -> None:
    if sp.simplify(value) == 0:
        raise SkeinDivisionByZeroError(f"skein coefficient {name} is zero")


def skein_eval(e: Embedding, coeffs: SkeinCoefficients):
    """
    Evaluate the skein invariant of a realized diagram.

    Each ascending crossing is resolved by
        f(L+) = (C·f(L0) - B·f(L-)) / A   or   f(L-) = (C·f(L0) - A·f(L+)) / B,
    where L+/L- is decided by the crossing's sign (negated once switched).

    Raises:
        SkeinDivisionByZeroError: C is zero, or the coefficient to divide by is zero

    Example:
        >>> skein_eval(realize(validate_set([(1, 4), (3, 6), (5, 2)])), CONWAY)
        z**2 + 1
    """
    _check_nonzero(coeffs.C, "C")
    _check_nonzero(coeffs.A, "A")
    _check_nonzero(coeffs.B, "B")
    signs = [cs.sign for cs in crossing_signs(e)]
    unlink = (coeffs.A + coeffs.B) / coeffs.C
    memo: Dict[Tuple[int, ...], sp.Expr] = {}

    def value(diagram: GeneralizedDiagram) -> sp.Expr:
        if diagram.states in memo:
            return memo[diagram.states]
        idx = diagram.first_ascending()
        if idx is None:
            result = unlink ** (diagram.component_count - 1)
        else:
            sign = signs[idx] * (-1 if diagram.states[idx] == SWITCHED else 1)
            flipped = diagram.with_state(idx, INTACT if diagram.states[idx] == SWITCHED else SWITCHED)
            smoothed = diagram.with_state(idx, SMOOTHED)
            if sign > 0:
                result = (coeffs.C * value(smoothed) - coeffs.B * value(flipped)) / coeffs.A
            else:
                result = (coeffs.C * value(smoothed) - coeffs.A * value(flipped)) / coeffs.B
        result = sp.expand(sp.cancel(result))
        memo[diagram.states] = result
        return result

    return sp.expand(sp.simplify(value(GeneralizedDiagram.of(e))))


def unlink_value(components: int, coeffs: SkeinCoefficients):
    """f of the trivial link with the given number of components."""
    return sp.simplify(((coeffs.A + coeffs.B) / coeffs.C) ** (components - 1))


def conway_to_alexander(conway) -> LaurentPoly:
    """
    Alexander polynomial from a Conway polynomial via z = s - 1/s and t = s^2, normalized.

    Example:
        >>> str(conway_to_alexander(Z**2 + 1))
        't^2 - t + 1'
    """
    s = sp.Symbol("s")
    in_s = LaurentPoly.from_sympy(sp.expand(sp.sympify(conway).subs(Z, s - 1 / s)), s)
    halved = {}
    for exponent, c in in_s.terms:
        if exponent % 2:
            raise ValueError(f"odd power of s in {conway}; not a knot's Conway polynomial")
        halved[exponent // 2] = c
    return LaurentPoly.from_dict(halved).normalized()


__all__ = [
    "INTACT",
    "SWITCHED",
    "SMOOTHED",
    "Z",
    "SkeinCoefficients",
    "CONWAY",
    "JONES",
    "GeneralizedDiagram",
    "skein_eval",
    "unlink_value",
    "conway_to_alexander",
]
