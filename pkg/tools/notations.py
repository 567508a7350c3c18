"""
Alternative Knot Notations: Braid Words and Lattice Walks.

Braid words list generator exponents (a_i = ±i for σ_i^±1) over a fixed
number of strands; lattice walks list unit steps (±1, ±2, ±3 for ±x, ±y, ±z)
of a closed self-avoiding polygon on the cubic lattice. Both are supported at
validation scale: closure components, rewrites and Markov moves for braids,
closure/avoidance checks and local moves for walks.
"""

import sys
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.errors import CannotDestabilizeError, MoveBlockedError, ParseError, PatternMismatchError


def parse_int_sequence(text: str) -> List[int]:
    """Whitespace- or comma-separated integers."""
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as e:
        raise ParseError(f"expected integers, got {text!r}") from e


# ==================== Braid Words ====================

@dataclass(frozen=True)
class BraidWord:
    """
    Word in the braid group on `strands` strands.

    Attributes:
        strands: Braid index n >= 1
        letters: Nonzero integers with |a| <= n - 1; the sign is the exponent
    """

    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ParseError(f"a braid needs at least one strand, got {self.strands}")
        for a in self.letters:
            if a == 0 or abs(a) > self.strands - 1:
                raise ParseError(f"letter {a} is not a generator of B{self.strands}")

    @classmethod
    def of(cls, letters: Sequence[int], strands: Optional[int] = None) -> "BraidWord":
        """Build a word, defaulting the strand count to one more than the largest generator."""
        letters = tuple(int(a) for a in letters)
        if strands is None:
            strands = max((abs(a) for a in letters), default=0) + 1
        return cls(strands, letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))

    def __str__(self) -> str:
        body = " ".join(str(a) for a in self.letters) or "(empty)"
        return f"B{self.strands}: {body}"


class RewriteRule(str, Enum):
    FREE_CANCEL = "free_cancel"
    FAR_COMMUTE = "far_commute"
    BRAID_RELATION = "braid_relation"


class MarkovKind(str, Enum):
    CONJUGATE = "conjugate"
    STABILIZE = "stabilize"
    DESTABILIZE = "destabilize"


def closure_permutation(w: BraidWord) -> Permutation:
    """Product of the transpositions (i, i+1) for the letters, on points 0..n-1."""
    perm = Permutation(list(range(w.strands)))
    for a in w.letters:
        i = abs(a) - 1
        perm = perm * Permutation(i, i + 1, size=w.strands)
    return perm


def braid_components(w: BraidWord) -> int:
    """
    Components of the braid closure: cycles of the closure permutation, fixed points included.

    Example:
        >>> braid_components(BraidWord(2, (1, 1)))
        2
    """
    return closure_permutation(w).cycles


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent letters a, -a until none remain."""
    stack: List[int] = []
    for a in w.letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return BraidWord(w.strands, tuple(stack))


def braid_rewrite(w: BraidWord, rule: RewriteRule, pos: int) -> BraidWord:
    """
    Apply one braid-group relation at 0-based letter position pos.

    Rules:
        free_cancel: a, -a -> (nothing)
        far_commute: a, b -> b, a when ||a| - |b|| > 1
        braid_relation: a, b, a -> b, a, b when ||a| - |b|| = 1 and all three share a sign

    Raises:
        PatternMismatchError: The rule does not match at pos
    """
    rule = RewriteRule(rule)
    letters = list(w.letters)
    window = 3 if rule == RewriteRule.BRAID_RELATION else 2
    if pos < 0 or pos + window > len(letters):
        raise PatternMismatchError(f"{rule.value} needs {window} letters at position {pos} of {w}")

    if rule == RewriteRule.FREE_CANCEL:
        a, b = letters[pos:pos + 2]
        if a != -b:
            raise PatternMismatchError(f"{a}, {b} is not a trivial factor")
        del letters[pos:pos + 2]
    elif rule == RewriteRule.FAR_COMMUTE:
        a, b = letters[pos:pos + 2]
        if abs(abs(a) - abs(b)) <= 1:
            raise PatternMismatchError(f"generators {abs(a)} and {abs(b)} are not distant")
        letters[pos:pos + 2] = [b, a]
    else:
        a, b, c = letters[pos:pos + 3]
        same_sign = (a > 0) == (b > 0) == (c > 0)
        if a != c or abs(abs(a) - abs(b)) != 1 or not same_sign:
            raise PatternMismatchError(f"{a}, {b}, {c} is not a braid relation pattern")
        letters[pos:pos + 3] = [b, a, b]
    return BraidWord(w.strands, tuple(letters))


def markov_move(w: BraidWord, kind: MarkovKind, arg=None) -> BraidWord:
    """
    Markov moves preserving the closure's knot type.

    Args:
        w: Braid word
        kind: conjugate (arg: BraidWord or letters in the same group),
              stabilize (arg: +1 or -1), destabilize (no arg)

    Raises:
        CannotDestabilizeError: The top generator is not the last letter or occurs more than once

    Example:
        >>> markov_move(BraidWord(2, (1,)), MarkovKind.STABILIZE, 1)
        BraidWord(strands=3, letters=(1, 2))
    """
    kind = MarkovKind(kind)
    if kind == MarkovKind.CONJUGATE:
        by = arg if isinstance(arg, BraidWord) else BraidWord(w.strands, tuple(arg or ()))
        if by.strands != w.strands:
            raise ValueError(f"conjugating word lives in B{by.strands}, not B{w.strands}")
        return free_reduce(BraidWord(w.strands, by.letters + w.letters + by.inverse().letters))

    if kind == MarkovKind.STABILIZE:
        eps = 1 if arg is None else int(arg)
        if eps not in (1, -1):
            raise ValueError(f"stabilization exponent must be +1 or -1, got {eps}")
        return BraidWord(w.strands + 1, w.letters + (eps * w.strands,))

    top = w.strands - 1
    count = sum(1 for a in w.letters if abs(a) == top)
    if top < 1 or not w.letters or abs(w.letters[-1]) != top or count != 1:
        raise CannotDestabilizeError(f"{w} does not end in a single occurrence of generator {top}")
    return BraidWord(w.strands - 1, w.letters[:-1])


def braid_is_connected_sum_candidate(w: BraidWord) -> Optional[int]:
    """
    Least generator index occurring exactly once (either sign), or None.

    Only a candidacy test: both sides must still be non-trivial knots.
    """
    counts = Counter(abs(a) for a in w.letters)
    singles = [g for g, c in counts.items() if c == 1]
    return min(singles) if singles else None


# ==================== Lattice Walks ====================

_UNIT = np.eye(3, dtype=np.int64)


@dataclass(frozen=True)
class LatticeWalk:
    """Closed walk on the cubic lattice as steps in {±1, ±2, ±3}."""

    steps: Tuple[int, ...]

    @classmethod
    def of(cls, steps: Sequence[int]) -> "LatticeWalk":
        return cls(tuple(int(a) for a in steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.steps)


def _vectors(steps: Sequence[int]) -> np.ndarray:
    if any(a == 0 or abs(a) > 3 for a in steps):
        raise ValueError(f"steps must be in ±1, ±2, ±3: {tuple(steps)}")
    return np.array([np.sign(a) * _UNIT[abs(a) - 1] for a in steps], dtype=np.int64).reshape(-1, 3)


def saw_points(walk: LatticeWalk) -> np.ndarray:
    """Lattice points p_1..p_L visited after each step (p_L is the origin for a closed walk)."""
    return np.cumsum(_vectors(walk.steps), axis=0)


def saw_validate(walk: LatticeWalk) -> bool:
    """
    Closed and self-avoiding: total displacement zero and every visited point distinct.

    Walks shorter than 4 steps are rejected (no closed polygon is shorter).

    Example:
        >>> saw_validate(LatticeWalk.of([1, 2, -1, -2]))
        True
    """
    if len(walk.steps) < 4:
        return False
    try:
        points = saw_points(walk)
    except ValueError:
        return False
    if points[-1].any():
        return False
    return len({tuple(p) for p in points}) == len(points)


def saw_reparametrize(walk: LatticeWalk, shift: int) -> LatticeWalk:
    """Start the walk `shift` steps later (a cyclic rotation of the steps)."""
    if not walk.steps:
        return walk
    shift %= len(walk.steps)
    return LatticeWalk(walk.steps[shift:] + walk.steps[:shift])


def same_closed_walk(a: LatticeWalk, b: LatticeWalk) -> bool:
    """True when b is a cyclic reparametrization of a."""
    if len(a) != len(b):
        return False
    return any(saw_reparametrize(a, k) == b for k in range(max(len(a), 1)))


class SawMove(str, Enum):
    TRANSPOSE = "I"
    EXCISE = "II"
    INSERT = "II+"


def _occupied(walk: LatticeWalk) -> set:
    return {tuple(p) for p in saw_points(walk)}


def saw_move(walk: LatticeWalk, kind: SawMove, index: int, direction: Optional[int] = None) -> LatticeWalk:
    """
    Local lattice moves at 1-based step index i.

    Moves:
        I (transpose): swap a_i and a_{i+1}, moving one corner
        II (excise): when a_{i+2} = -a_i, drop a_i and a_{i+2}, keeping a_{i+1}
        II+ (insert): replace a_i by direction, a_i, -direction (direction perpendicular to a_i)

    Raises:
        MoveBlockedError: Pattern fails, a new point is already occupied, or the result is not a closed SAW

    Example:
        >>> saw_move(LatticeWalk.of([1, 2, 2, -1, -2, -2]), SawMove.EXCISE, 3).steps
        (1, 2, -1, -2)
    """
    kind = SawMove(kind)
    steps = list(walk.steps)
    length = len(steps)
    if not 1 <= index <= length:
        raise MoveBlockedError(f"step index {index} is outside 1..{length}")
    i = index - 1
    occupied = _occupied(walk)
    points = saw_points(walk)
    before = points[i - 1] if i > 0 else np.zeros(3, dtype=np.int64)

    if kind == SawMove.TRANSPOSE:
        if not 0 <= i < length - 1:
            raise MoveBlockedError(f"move I needs 1 <= i <= {length - 1}, got {index}")
        a, b = steps[i], steps[i + 1]
        if a == b:
            raise MoveBlockedError(f"steps {i + 1} and {i + 2} are equal; nothing to transpose")
        corner = before + _vectors([b])[0]
        if tuple(corner) in occupied:
            raise MoveBlockedError(f"corner {tuple(int(x) for x in corner)} is occupied")
        steps[i], steps[i + 1] = b, a
    elif kind == SawMove.EXCISE:
        if not 0 <= i < length - 2:
            raise MoveBlockedError(f"move II needs 1 <= i <= {length - 2}, got {index}")
        if steps[i + 2] != -steps[i]:
            raise MoveBlockedError(f"a_{i + 3} = {steps[i + 2]} is not -a_{i + 1} = {-steps[i]}")
        steps = steps[:i] + [steps[i + 1]] + steps[i + 3:]
    else:
        if not 0 <= i < length:
            raise MoveBlockedError(f"insertion needs 1 <= i <= {length}, got {index}")
        if direction is None or direction == 0 or abs(direction) > 3 or abs(direction) == abs(steps[i]):
            raise MoveBlockedError(f"direction {direction} is not perpendicular to step {steps[i]}")
        first = before + _vectors([direction])[0]
        second = first + _vectors([steps[i]])[0]
        for p in (first, second):
            if tuple(p) in occupied:
                raise MoveBlockedError(f"point {tuple(int(x) for x in p)} is occupied")
        steps = steps[:i] + [direction, steps[i], -direction] + steps[i + 1:]

    result = LatticeWalk(tuple(steps))
    if not saw_validate(result):
        raise MoveBlockedError(f"result {result} is not a closed self-avoiding walk")
    return result


__all__ = [
    "parse_int_sequence",
    "BraidWord",
    "RewriteRule",
    "MarkovKind",
    "closure_permutation",
    "braid_components",
    "free_reduce",
    "braid_rewrite",
    "markov_move",
    "braid_is_connected_sum_candidate",
    "LatticeWalk",
    "SawMove",
    "saw_points",
    "saw_validate",
    "saw_reparametrize",
    "same_closed_walk",
    "saw_move",
]
