"""
Reidemeister Moves on Dowker Codes.

Every move is an exact rewrite of the cyclic passage sequence followed by
renumbering, which reproduces the label arithmetic of the three moves:

- R1: a pair (i, i+1) is added or removed; labels >= i shift by 2
- R2: pairs (i, j), (i+1, j+1) or (i+1, j), (i, j+1) are added or removed;
  labels in [min, max) shift by 2 and labels >= max by 4
- R3: pairs (i, j), (i', k), (j', k') become (i, k'), (i', j'), (j, k)

Move neighborhoods are generated from the faces of the realized diagram,
so every addition is a genuine kink, poke or slide.
"""

import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Set, Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import (
    CanonicalCode,
    DowkerSet,
    Passage,
    canonicalize,
    from_gauss_sequence,
    relabel,
    swap_passages,
    to_gauss_sequence,
)
from tools.drawability import Embedding, realize
from utils.errors import IncoherentTriangleError, SiteNotPresentError, UndrawableError
from utils.logger import logger


# ==================== Move Descriptors ====================

class MoveKind(str, Enum):
    R1_ADD = "R1_add"
    R1_REMOVE = "R1_remove"
    R2_ADD = "R2_add"
    R2_REMOVE = "R2_remove"
    R3 = "R3"


@dataclass(frozen=True)
class MoveDescriptor:
    """
    One move and its site.

    Sites by kind:
        R1_ADD: (slot,) inserts the kink before old label slot (1..2n+1)
        R1_REMOVE: (i,) removes the kink at labels i, i+1
        R2_ADD: (a, b) with a <= b inserts the two strands before old labels a and b
        R2_REMOVE: (i, j) removes the bigon at labels i, i+1 and j, j+1
        R3: (i, i', j, j', k, k') as in the triangle substitution

    over_first marks whether the strand at the first site passes over;
    parallel distinguishes the two R2 patterns.
    """

    kind: MoveKind
    sites: Tuple[int, ...]
    over_first: bool = True
    parallel: bool = True

    @property
    def text(self) -> str:
        body = ",".join(str(x) for x in self.sites)
        flags = []
        if self.kind in (MoveKind.R1_ADD, MoveKind.R2_ADD):
            flags.append("over" if self.over_first else "under")
        if self.kind in (MoveKind.R2_ADD, MoveKind.R2_REMOVE):
            flags.append("par" if self.parallel else "anti")
        suffix = f";{','.join(flags)}" if flags else ""
        return f"{self.kind.value}({body}{suffix})"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class MoveResult:
    """A move applied to a code, with the descriptor that undoes it (when known)."""

    source: DowkerSet
    move: MoveDescriptor
    code: DowkerSet
    inverse: Optional[MoveDescriptor] = None


# ==================== Sequence Surgery ====================

def _next(label: int, two_n: int) -> int:
    return label % two_n + 1


def _insert(seq: List[Passage], blocks: Sequence[Tuple[int, Sequence[Passage]]]) -> List[Passage]:
    """Insert passage blocks before the given 1-based slots of the original sequence."""
    out = list(seq)
    for slot, block in sorted(blocks, key=lambda b: b[0], reverse=True):
        out[slot - 1:slot - 1] = list(block)
    return out


def _remove_blocks(s: DowkerSet, starts: Sequence[int]):
    """
    Delete the labels p, p+1 for every block start p.

    Returns:
        (result, slots, rotated) where slots are the insertion slots that put
        the blocks back (in the numbering of result) and rotated is the code the
        removal was carried out on (s itself unless a block wrapped past 2n)
    """
    two_n = s.two_n
    if two_n in starts:
        s = relabel(s, 1, 1)
        starts = [_next(p, two_n) for p in starts]
    removed = set()
    for p in starts:
        removed.update((p, p + 1))
    seq = to_gauss_sequence(s)
    kept = [seq[label - 1] for label in range(1, two_n + 1) if label not in removed]
    slots = [sum(1 for label in range(1, p) if label not in removed) + 1 for p in sorted(starts)]
    return from_gauss_sequence(kept), slots, s


# ==================== R1 ====================

def _check_slot(s: DowkerSet, slot: int) -> None:
    if not 1 <= slot <= s.two_n + 1:
        raise SiteNotPresentError(f"insertion slot {slot} is outside 1..{s.two_n + 1}")


def r1_add(s: DowkerSet, slot: int, over_first: bool = True) -> DowkerSet:
    """
    Insert a kink before old label slot.

    Example:
        >>> r1_add(UNKNOT, 1).pairs
        ((1, 2),)
    """
    _check_slot(s, slot)
    seq = to_gauss_sequence(s)
    kink = ("k", 0)
    return from_gauss_sequence(_insert(seq, [(slot, [(kink, over_first), (kink, not over_first)])]))


def _r1_remove(s: DowkerSet, i: int) -> MoveResult:
    two_n = s.two_n
    if not 1 <= i <= two_n or s.partners()[i] != _next(i, two_n):
        raise SiteNotPresentError(f"no kink (i, i+1) at label {i} in {s}")
    over_first = s.over_flags()[i]
    result, slots, _ = _remove_blocks(s, [i])
    move = MoveDescriptor(MoveKind.R1_REMOVE, (i,))
    inverse = MoveDescriptor(MoveKind.R1_ADD, (slots[0],), over_first=over_first)
    return MoveResult(s, move, result, inverse)


def r1_remove(s: DowkerSet, i: int) -> DowkerSet:
    """
    Remove the kink at labels i, i+1 (cyclically).

    Raises:
        SiteNotPresentError: Labels i and i+1 do not form a crossing
    """
    return _r1_remove(s, i).code


def r1(s: DowkerSet, d: MoveDescriptor) -> DowkerSet:
    if d.kind == MoveKind.R1_ADD:
        return r1_add(s, d.sites[0], d.over_first)
    if d.kind == MoveKind.R1_REMOVE:
        return r1_remove(s, d.sites[0])
    raise ValueError(f"not an R1 descriptor: {d}")


# ==================== R2 ====================

def r2_add(s: DowkerSet, a: int, b: int, parallel: bool = True, over_first: bool = True) -> DowkerSet:
    """
    Push the strand at slot a across the strand at slot b, creating two crossings.

    Args:
        a, b: Insertion slots (1..2n+1), a <= b
        parallel: Both strands meet the new crossings in the same order
        over_first: The strand at slot a passes over both new crossings

    Example:
        >>> r2_add(UNKNOT, 1, 1, parallel=False).pairs
        ((1, 4), (2, 3))
    """
    if a > b:
        raise SiteNotPresentError(f"R2 slots must satisfy a <= b, got ({a}, {b})")
    _check_slot(s, a)
    _check_slot(s, b)
    x, y = ("p", 0), ("p", 1)
    first = [(x, over_first), (y, over_first)]
    second = [(x, not over_first), (y, not over_first)] if parallel else [(y, not over_first), (x, not over_first)]
    seq = to_gauss_sequence(s)
    # The block at b goes in first so an equal slot still puts a's block in front.
    out = list(seq)
    out[b - 1:b - 1] = second
    out[a - 1:a - 1] = first
    return from_gauss_sequence(out)


def _r2_pattern(s: DowkerSet, i: int, j: int) -> Optional[bool]:
    """True for the parallel pattern at (i, j), False for antiparallel, None if absent."""
    two_n = s.two_n
    if not (1 <= i <= two_n and 1 <= j <= two_n):
        return None
    i1, j1 = _next(i, two_n), _next(j, two_n)
    if len({i, i1, j, j1}) < 4:
        return None
    partner = s.partners()
    over = s.over_flags()
    if over[i] != over[i1]:
        return None
    if partner[i] == j and partner[i1] == j1:
        return True
    if partner[i] == j1 and partner[i1] == j:
        return False
    return None


def _r2_remove(s: DowkerSet, i: int, j: int) -> MoveResult:
    parallel = _r2_pattern(s, i, j)
    if parallel is None:
        raise SiteNotPresentError(f"no R2 bigon at labels ({i}, {j}) in {s}")
    over_first = s.over_flags()[min(i, j)]
    result, slots, rotated = _remove_blocks(s, [i, j])
    if rotated is not s:
        over_first = rotated.over_flags()[min(_next(i, s.two_n), _next(j, s.two_n))]
    move = MoveDescriptor(MoveKind.R2_REMOVE, (i, j), parallel=parallel)
    inverse = MoveDescriptor(MoveKind.R2_ADD, (slots[0], slots[1]), over_first=over_first, parallel=parallel)
    return MoveResult(s, move, result, inverse)


def r2_remove(s: DowkerSet, i: int, j: int) -> DowkerSet:
    """
    Remove the two crossings of a bigon at labels (i, i+1) and (j, j+1).

    Raises:
        SiteNotPresentError: Neither pattern is present, or one strand is not over at both

    Example:
        >>> r2_remove(validate_set([(1, 4), (2, 3)]), 1, 3)
        DowkerSet(pairs=())
    """
    return _r2_remove(s, i, j).code


def r2(s: DowkerSet, d: MoveDescriptor) -> DowkerSet:
    if d.kind == MoveKind.R2_ADD:
        a, b = d.sites
        return r2_add(s, a, b, d.parallel, d.over_first)
    if d.kind == MoveKind.R2_REMOVE:
        return r2_remove(s, *d.sites)
    raise ValueError(f"not an R2 descriptor: {d}")


# ==================== R3 ====================

def _edge_between(a: int, b: int, two_n: int) -> Optional[int]:
    if _next(a, two_n) == b:
        return a
    if _next(b, two_n) == a:
        return b
    return None


def _triangle_faces(e: Embedding) -> Set[frozenset]:
    return {frozenset(edge for edge, _ in face) for face in e.faces if len(face) == 3}


def _heights_acyclic(s: DowkerSet, site: Sequence[int]) -> bool:
    """Some strand of the three passes over at both of its crossings."""
    i, i2, j, j2, k, k2 = site
    over = s.over_flags()
    return any(over[a] and over[b] for a, b in ((i, i2), (j, j2), (k, k2)))


def _r3(s: DowkerSet, site: Tuple[int, ...], embedding: Optional[Embedding] = None) -> MoveResult:
    if len(site) != 6:
        raise SiteNotPresentError(f"R3 needs six labels, got {site}")
    i, i2, j, j2, k, k2 = site
    two_n = s.two_n
    if len(set(site)) != 6 or not all(1 <= x <= two_n for x in site):
        raise SiteNotPresentError(f"R3 labels must be six distinct labels in 1..{two_n}: {site}")
    partner = s.partners()
    edges = [_edge_between(a, b, two_n) for a, b in ((i, i2), (j, j2), (k, k2))]
    if None in edges or partner[i] != j or partner[i2] != k or partner[j2] != k2:
        raise SiteNotPresentError(f"pairs (i,j), (i',k), (j',k') not present at {site} in {s}")

    if embedding is None:
        embedding = realize(s)
        if not isinstance(embedding, Embedding):
            raise UndrawableError(s.text, embedding.witness)
    if frozenset(edges) not in _triangle_faces(embedding):
        raise IncoherentTriangleError(f"labels {site} match numerically but bound no triangular face")
    if not _heights_acyclic(s, site):
        raise SiteNotPresentError(f"triangle at {site} is cyclically over/under; no strand can slide")

    result = swap_passages(s, [(i, i2), (j, j2), (k, k2)])
    check = realize(result)
    if not isinstance(check, Embedding):
        raise UndrawableError(result.text, check.witness)
    move = MoveDescriptor(MoveKind.R3, tuple(site))
    inverse = MoveDescriptor(MoveKind.R3, (i2, i, j2, j, k2, k))
    return MoveResult(s, move, result, inverse)


def r3(s: DowkerSet, d: MoveDescriptor) -> DowkerSet:
    """
    Slide a strand across a crossing: pairs (i,j), (i',k), (j',k') become (i,k'), (i',j'), (j,k).

    Raises:
        SiteNotPresentError: The pairs are missing or no strand lies above both others
        IncoherentTriangleError: The pairs match but do not bound a triangular face
    """
    if d.kind != MoveKind.R3:
        raise ValueError(f"not an R3 descriptor: {d}")
    return _r3(s, d.sites).code


# ==================== Dispatch ====================

def apply_move(s: DowkerSet, d: MoveDescriptor) -> DowkerSet:
    """Apply any move descriptor."""
    if d.kind in (MoveKind.R1_ADD, MoveKind.R1_REMOVE):
        return r1(s, d)
    if d.kind in (MoveKind.R2_ADD, MoveKind.R2_REMOVE):
        return r2(s, d)
    return r3(s, d)


def apply_traced(s: DowkerSet, d: MoveDescriptor) -> MoveResult:
    """Apply a move and record its inverse (removals and R3 only)."""
    if d.kind == MoveKind.R1_REMOVE:
        return _r1_remove(s, d.sites[0])
    if d.kind == MoveKind.R2_REMOVE:
        return _r2_remove(s, *d.sites)
    if d.kind == MoveKind.R3:
        return _r3(s, d.sites)
    return MoveResult(s, d, apply_move(s, d))


# ==================== Site Enumeration ====================

def r1_sites(s: DowkerSet) -> List[MoveDescriptor]:
    """Every removable kink."""
    two_n = s.two_n
    partner = s.partners()
    return [
        MoveDescriptor(MoveKind.R1_REMOVE, (i,))
        for i in range(1, two_n + 1)
        if partner[i] == _next(i, two_n)
    ]


def r2_sites(s: DowkerSet) -> List[MoveDescriptor]:
    """Every removable bigon, scanned numerically with i < j."""
    sites = []
    for i in range(1, s.two_n + 1):
        for j in range(i + 1, s.two_n + 1):
            parallel = _r2_pattern(s, i, j)
            if parallel is not None:
                sites.append(MoveDescriptor(MoveKind.R2_REMOVE, (i, j), parallel=parallel))
    return sites


def r3_sites(e: Embedding) -> List[MoveDescriptor]:
    """Every triangular face whose three strands can slide (heights acyclic)."""
    s = e.code
    two_n = s.two_n
    partner = s.partners()
    sites = []
    for face in e.faces:
        if len(face) != 3:
            continue
        edges = [edge for edge, _ in face]
        a = edges[0]
        i, i2 = a, _next(a, two_n)
        j, k = partner[i], partner[i2]
        rest = edges[1:]
        j_edge = next((x for x in rest if j in (x, _next(x, two_n))), None)
        k_edge = next((x for x in rest if k in (x, _next(x, two_n)) and x != j_edge), None)
        if j_edge is None or k_edge is None:
            continue
        j2 = _next(j_edge, two_n) if j == j_edge else j_edge
        k2 = _next(k_edge, two_n) if k == k_edge else k_edge
        site = (i, i2, j, j2, k, k2)
        if len(set(site)) != 6 or partner[j2] != k2:
            continue
        if _heights_acyclic(s, site):
            sites.append(MoveDescriptor(MoveKind.R3, site))
    return sites


def addition_sites(e: Embedding, max_n: int) -> List[MoveDescriptor]:
    """
    Kinks on every edge and pokes across every face, within the crossing bound.

    A poke pushes edge d1 across its face over or under edge d2; the two
    strands meet the new crossings in the same order exactly when the face
    traverses them in opposite directions.
    """
    s = e.code
    two_n = s.two_n
    sites: List[MoveDescriptor] = []
    if s.n + 1 <= max_n:
        for slot in range(1, max(two_n, 1) + 1):
            for over_first in (True, False):
                sites.append(MoveDescriptor(MoveKind.R1_ADD, (slot,), over_first=over_first))
    if s.n + 2 <= max_n:
        if s.n == 0:
            for over_first in (True, False):
                sites.append(MoveDescriptor(MoveKind.R2_ADD, (1, 1), over_first=over_first, parallel=False))
            return sites
        seen: Set[Tuple[int, int, bool]] = set()
        for face in e.faces:
            for x in range(len(face)):
                for y in range(x + 1, len(face)):
                    (e1, f1), (e2, f2) = face[x], face[y]
                    if e1 == e2:
                        continue
                    a, b = sorted((e1 + 1, e2 + 1))
                    parallel = f1 != f2
                    if (a, b, parallel) in seen:
                        continue
                    seen.add((a, b, parallel))
                    for over_first in (True, False):
                        sites.append(
                            MoveDescriptor(MoveKind.R2_ADD, (a, b), over_first=over_first, parallel=parallel)
                        )
    return sites


# ==================== Neighborhoods ====================

def neighbor_moves(s: DowkerSet, max_n: int) -> List[MoveResult]:
    """
    All single moves from a drawable code whose results stay within max_n crossings.

    Results are drawable; removals and slides carry their inverse descriptor.

    Raises:
        UndrawableError: s has no planar realization
    """
    embedding = realize(s)
    if not isinstance(embedding, Embedding):
        raise UndrawableError(s.text, embedding.witness)

    results: List[MoveResult] = []
    for d in r1_sites(s):
        results.append(_r1_remove(s, d.sites[0]))
    for d in r2_sites(s):
        results.append(_r2_remove(s, *d.sites))
    for d in r3_sites(embedding):
        try:
            results.append(_r3(s, d.sites, embedding))
        except (SiteNotPresentError, UndrawableError) as e:
            logger.debug(f"skipping R3 site {d} on {s}: {e}")
    for d in addition_sites(embedding, max_n):
        code = apply_move(s, d)
        if isinstance(realize(code), Embedding):
            results.append(MoveResult(s, d, code))
    return [r for r in results if r.code.n <= max_n]


def neighbors(s: DowkerSet, max_n: int) -> Set[CanonicalCode]:
    """
    Canonical codes one move away from s, excluding s itself.

    Example:
        >>> canonicalize(validate_set([(1, 2)])) in neighbors(UNKNOT, 1)
        True
    """
    own = canonicalize(s)
    found = {canonicalize(r.code) for r in neighbor_moves(s, max_n)}
    found.discard(own)
    return found


__all__ = [
    "MoveKind",
    "MoveDescriptor",
    "MoveResult",
    "r1_add",
    "r1_remove",
    "r1",
    "r2_add",
    "r2_remove",
    "r2",
    "r3",
    "apply_move",
    "apply_traced",
    "r1_sites",
    "r2_sites",
    "r3_sites",
    "addition_sites",
    "neighbor_moves",
    "neighbors",
]
