"""
Dowker Pair-Set Codes.

A knot projection with n crossings is walked once from a base point; the 2n
passages through crossings receive the labels 1..2n in traversal order and
every crossing is stored as an ordered pair (over_label, under_label).

This module provides:
- DowkerSet validation, text form and DT sequence
- Relabeling (origin shift / orientation reversal) and mirroring
- Canonical forms over the shift × reversal × mirror group
- Connected-sum detection and prime factor decomposition
- Conversion to and from the cyclic passage (Gauss) sequence used by the moves
"""

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.errors import DuplicateLabelError, LabelOutOfRangeError, ParseError

Pair = Tuple[int, int]
Passage = Tuple[int, bool]  # (crossing id, passes over)


# ==================== Dowker Sets ====================

@dataclass(frozen=True)
class DowkerSet:
    """
    Immutable Dowker code: n ordered pairs (over_label, under_label) partitioning 1..2n.

    Pairs are stored sorted by over label, so two codes are equal exactly
    when they contain the same pairs. The empty code is the unknot diagram.
    """

    pairs: Tuple[Pair, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[Pair]) -> "DowkerSet":
        """Build from already-validated pairs (no checks)."""
        return cls(tuple(sorted((int(o), int(u)) for o, u in pairs)))

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def two_n(self) -> int:
        return 2 * len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def partners(self) -> List[int]:
        """partner[label] for labels 1..2n (index 0 unused)."""
        partner = [0] * (self.two_n + 1)
        for o, u in self.pairs:
            partner[o] = u
            partner[u] = o
        return partner

    def over_flags(self) -> List[bool]:
        """over[label] is True when the passage at that label is the over-pass."""
        over = [False] * (self.two_n + 1)
        for o, _ in self.pairs:
            over[o] = True
        return over

    def shadow(self) -> Tuple[Pair, ...]:
        """Crossings as (smaller label, larger label), over/under forgotten."""
        return tuple(sorted((min(o, u), max(o, u)) for o, u in self.pairs))

    @property
    def text(self) -> str:
        return format_code(self)

    def __str__(self) -> str:
        return format_code(self)


@dataclass(frozen=True)
class SplitPoint:
    """Label k at which a cyclic interval closed under pairing begins."""

    k: int


UNKNOT = DowkerSet(())


def validate_set(raw: Sequence[Sequence[int]]) -> DowkerSet:
    """
    Validate raw label pairs as a Dowker set.

    Args:
        raw: Sequence of (over_label, under_label) pairs

    Returns:
        DowkerSet with the labels untouched

    Raises:
        DuplicateLabelError: A label occurs twice
        LabelOutOfRangeError: A label lies outside 1..2n
        ParseError: An entry is not a pair of integers

    Example:
        >>> validate_set([(1, 4), (3, 6), (5, 2)]).n
        3
    """
    pairs = []
    for entry in raw:
        try:
            o, u = entry
            pairs.append((int(o), int(u)))
        except (TypeError, ValueError) as e:
            raise ParseError(f"not a label pair: {entry!r}") from e

    two_n = 2 * len(pairs)
    seen = set()
    for o, u in pairs:
        for label in (o, u):
            if not 1 <= label <= two_n:
                raise LabelOutOfRangeError(label, two_n)
            if label in seen:
                raise DuplicateLabelError(label)
            seen.add(label)

    return DowkerSet.from_pairs(pairs)


# ==================== Text Forms ====================

def format_code(s: DowkerSet) -> str:
    """Text form `n ; o1,u1 o2,u2 ...` with pairs sorted by over label."""
    body = " ".join(f"{o},{u}" for o, u in s.pairs)
    return f"{s.n} ; {body}" if body else f"{s.n} ;"


def parse_code(text: str) -> DowkerSet:
    """
    Parse either the full text form `3 ; 1,4 3,6 5,2` or a bare pair list `1,4 3,6 5,2`.

    Raises:
        ParseError: Malformed text or a declared count that disagrees with the pairs
        InvalidCodeError: The pairs do not partition 1..2n
    """
    text = text.strip()
    declared: Optional[int] = None
    if ";" in text:
        head, _, text = text.partition(";")
        try:
            declared = int(head.strip())
        except ValueError as e:
            raise ParseError(f"bad crossing count {head.strip()!r}") from e

    raw = []
    for token in text.replace("(", " ").replace(")", " ").split():
        parts = [p for p in token.split(",") if p]
        if len(parts) != 2:
            raise ParseError(f"expected 'over,under' but got {token!r}")
        try:
            raw.append((int(parts[0]), int(parts[1])))
        except ValueError as e:
            raise ParseError(f"non-integer label in {token!r}") from e

    if declared is not None and declared != len(raw):
        raise ParseError(f"declared {declared} crossings but found {len(raw)} pairs")

    return validate_set(raw)


def is_parity_code(s: DowkerSet) -> bool:
    return all((o + u) % 2 == 1 for o, u in s.pairs)


def dt_sequence(s: DowkerSet) -> Optional[Tuple[int, ...]]:
    """
    Signed even partners of 1, 3, ..., 2n-1 (negative when the odd label passes under).

    Returns None for codes that pair two labels of equal parity.
    """
    if not is_parity_code(s):
        return None
    partner = s.partners()
    over = s.over_flags()
    return tuple(
        partner[odd] if over[odd] else -partner[odd]
        for odd in range(1, s.two_n, 2)
    )


# ==================== Identifications ====================

def _shift(label: int, c: int, eps: int, two_n: int) -> int:
    return (c + eps * label - 1) % two_n + 1


def relabel(s: DowkerSet, c: int, eps: int) -> DowkerSet:
    """
    Move the origin by c and traverse in direction eps (±1): label i becomes c + eps·i mod 2n.

    Example:
        >>> relabel(validate_set([(1, 4), (3, 6), (5, 2)]), 2, 1).pairs
        ((1, 4), (3, 6), (5, 2))
    """
    if eps not in (1, -1):
        raise ValueError(f"orientation must be +1 or -1, got {eps}")
    if not s.pairs:
        return s
    two_n = s.two_n
    return DowkerSet.from_pairs(
        (_shift(o, c, eps, two_n), _shift(u, c, eps, two_n)) for o, u in s.pairs
    )


def mirror(s: DowkerSet) -> DowkerSet:
    """Swap over and under at every crossing."""
    return DowkerSet.from_pairs((u, o) for o, u in s.pairs)


def code_key(s: DowkerSet) -> tuple:
    """
    Total order on codes: crossing count first, then the DT-style comparison.

    For parity codes the order compares the even partners of 1, 3, ..., 2n-1
    and then the over/under marks at the odd labels (over sorts first), so the
    least code of an orbit also has the least projection sequence.
    """
    return _key_from_pairs(s.pairs, s.two_n)


def _key_from_pairs(pairs: Iterable[Pair], two_n: int) -> tuple:
    partner = [0] * (two_n + 1)
    over = [False] * (two_n + 1)
    parity = True
    plist = []
    for o, u in pairs:
        partner[o] = u
        partner[u] = o
        over[o] = True
        parity = parity and (o + u) % 2 == 1
        plist.append((o, u))
    n = two_n // 2
    if parity:
        evens = tuple(partner[odd] for odd in range(1, two_n, 2))
        marks = tuple(0 if over[odd] else 1 for odd in range(1, two_n, 2))
        return (n, 0, evens, marks)
    return (n, 1, tuple(sorted(plist)))


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """
    Least representative of a code's orbit under shift × reversal × mirror.

    Attributes:
        key: Ordering key (see code_key); equality and hashing use it alone
        code: The representative DowkerSet
        provenance: (c, eps, mirrored) that maps the input code onto the representative
    """

    key: tuple
    code: DowkerSet = field(compare=False)
    provenance: Tuple[int, int, bool] = field(compare=False, default=(0, 1, False))

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def text(self) -> str:
        return format_code(self.code)

    def __str__(self) -> str:
        return self.text


def orbit(s: DowkerSet) -> Iterator[Tuple[Tuple[int, int, bool], Tuple[Pair, ...]]]:
    """Yield ((c, eps, mirrored), pairs) for every element of the identification group."""
    if not s.pairs:
        yield (0, 1, False), ()
        return
    two_n = s.two_n
    for c in range(two_n):
        for eps in (1, -1):
            moved = [(_shift(o, c, eps, two_n), _shift(u, c, eps, two_n)) for o, u in s.pairs]
            yield (c, eps, False), tuple(moved)
            yield (c, eps, True), tuple((u, o) for o, u in moved)


def canonicalize(s: DowkerSet) -> CanonicalCode:
    """
    Lexicographically least code over all 2n shifts × 2 orientations × mirror.

    Example:
        >>> canonicalize(validate_set([(3, 6), (5, 2), (1, 4)])).text
        '3 ; 1,4 3,6 5,2'
    """
    two_n = s.two_n
    best_key = None
    best = ((0, 1, False), s.pairs)
    for provenance, pairs in orbit(s):
        key = _key_from_pairs(pairs, two_n)
        if best_key is None or key < best_key:
            best_key = key
            best = (provenance, pairs)
    provenance, pairs = best
    return CanonicalCode(best_key, DowkerSet.from_pairs(pairs), provenance)


def is_canonical(s: DowkerSet) -> bool:
    return canonicalize(s).code == s


# ==================== Connected Sums ====================

def closed_intervals(s: DowkerSet) -> List[Tuple[int, int]]:
    """
    All proper cyclic label intervals closed under pairing, as (start, length).

    An interval start..start+length-1 (mod 2n) is closed when every pair has
    both labels inside or both outside; 1 <= length <= 2n-1.
    """
    two_n = s.two_n
    if two_n < 4:
        return []
    partner = s.partners()
    found = []
    for start in range(1, two_n + 1):
        open_count = 0
        for length in range(1, two_n):
            label = (start + length - 2) % two_n + 1
            offset_partner = (partner[label] - start) % two_n
            if offset_partner < length - 1:
                open_count -= 1
            else:
                open_count += 1
            if open_count == 0:
                found.append((start, length))
    return found


def detect_connected_sum(s: DowkerSet) -> List[SplitPoint]:
    """
    Labels k at which the code separates into two nonempty codes.

    Each reported k starts a cyclic interval that no pair straddles; the
    complementary interval's start is reported as well, so a two-factor
    sum such as the doubled trefoil yields [1, 7].

    Returns:
        Sorted split points; empty for prime codes and the unknot
    """
    starts = sorted({start for start, _ in closed_intervals(s)})
    return [SplitPoint(k) for k in starts]


def split_at(s: DowkerSet, start: int, length: int) -> Tuple[DowkerSet, DowkerSet]:
    """
    Cut a code along a closed interval into (inner, outer) fragments, each relabeled to 1..2m.

    The outer fragment is numbered from the label after the interval onwards,
    preserving cyclic order.
    """
    two_n = s.two_n
    inner, outer = [], []
    for o, u in s.pairs:
        oo = (o - start) % two_n
        ou = (u - start) % two_n
        if oo < length and ou < length:
            inner.append((oo + 1, ou + 1))
        elif oo >= length and ou >= length:
            outer.append((oo - length + 1, ou - length + 1))
        else:
            raise ValueError(f"interval ({start}, {length}) is straddled by pair ({o},{u})")
    return DowkerSet.from_pairs(inner), DowkerSet.from_pairs(outer)


def prime_factors(s: DowkerSet) -> List[DowkerSet]:
    """
    Decompose a code into prime fragments.

    One-crossing curls are unknot fragments and are dropped, so a kinked
    trefoil yields [trefoil] and a curled unknot yields [].
    """
    if s.n <= 1:
        return []
    intervals = closed_intervals(s)
    if not intervals:
        return [s]
    start, length = min(intervals, key=lambda iv: (iv[1], iv[0]))
    inner, outer = split_at(s, start, length)
    return prime_factors(inner) + prime_factors(outer)


def is_prime_code(s: DowkerSet) -> bool:
    """True for the unknot and for codes with at least two crossings and no split point."""
    if s.n == 0:
        return True
    return s.n >= 2 and not closed_intervals(s)


# ==================== Passage Sequences ====================

def to_gauss_sequence(s: DowkerSet) -> List[Passage]:
    """
    Cyclic passage sequence: entry label-1 is (crossing id, passes over).

    Crossing ids are the over labels of the code.
    """
    seq: List[Passage] = [(0, False)] * s.two_n
    for o, u in s.pairs:
        seq[o - 1] = (o, True)
        seq[u - 1] = (o, False)
    return seq


def from_gauss_sequence(seq: Sequence[Passage]) -> DowkerSet:
    """
    Rebuild a code from a passage sequence, numbering positions 1..len(seq).

    Raises:
        ValueError: A crossing id does not occur exactly once over and once under
    """
    over_at, under_at = {}, {}
    for position, (crossing, is_over) in enumerate(seq, start=1):
        target = over_at if is_over else under_at
        if crossing in target:
            raise ValueError(f"crossing {crossing} passes {'over' if is_over else 'under'} twice")
        target[crossing] = position
    if over_at.keys() != under_at.keys():
        raise ValueError("every crossing needs one over and one under passage")
    return DowkerSet.from_pairs((over_at[c], under_at[c]) for c in over_at)


def swap_passages(s: DowkerSet, swaps: Sequence[Tuple[int, int]]) -> DowkerSet:
    """
    Exchange the passages at each pair of labels (the index form of a triangle move).

    Over/under marks travel with their passages, so the result is again a valid code.
    """
    seq = to_gauss_sequence(s)
    for a, b in swaps:
        seq[a - 1], seq[b - 1] = seq[b - 1], seq[a - 1]
    return from_gauss_sequence(seq)


__all__ = [
    "Pair",
    "Passage",
    "DowkerSet",
    "SplitPoint",
    "CanonicalCode",
    "UNKNOT",
    "validate_set",
    "format_code",
    "parse_code",
    "is_parity_code",
    "dt_sequence",
    "relabel",
    "mirror",
    "code_key",
    "orbit",
    "canonicalize",
    "is_canonical",
    "closed_intervals",
    "detect_connected_sum",
    "split_at",
    "prime_factors",
    "is_prime_code",
    "to_gauss_sequence",
    "from_gauss_sequence",
    "swap_passages",
]
