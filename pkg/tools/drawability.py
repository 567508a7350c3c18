"""
Drawability of Dowker Codes.

Decides whether a Dowker set is the code of an actual plane projection and,
when it is, builds an Embedding: the cyclic order of the four strand-ends at
every crossing plus the faces those orders trace out.

- parity_filter: odd labels must pair with even labels
- interval_loop_witness: two loops cut out at crossings that meet an odd number of times
- realize: planarity of a crossing-gadget graph (networkx), verified by a face count
- crossing_signs: +1/-1 per crossing from rotation order and over/under
- reduce_class: equal-drawability reductions that shrink a code
"""

import sys
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import (
    DowkerSet,
    Pair,
    from_gauss_sequence,
    is_parity_code,
    swap_passages,
    to_gauss_sequence,
)
from utils.logger import logger

IN, OUT = 0, 1

HalfEdge = Tuple[int, int]  # (label, IN | OUT)
Dart = Tuple[int, bool]  # (edge = tail label, traversed along the orientation)


# ==================== Result Types ====================

@dataclass(frozen=True)
class CrossingSign:
    crossing: Pair  # (over_label, under_label)
    sign: int


@dataclass(frozen=True)
class LoopWitness:
    """Two loops closed at crossings that meet transversally an odd number of times."""

    first: Tuple[int, ...]
    second: Tuple[int, ...]
    crossings: Tuple[Pair, ...]

    def describe(self) -> str:
        a = "-".join(str(x) for x in self.first)
        b = "-".join(str(x) for x in self.second)
        at = ", ".join(f"({o},{u})" for o, u in self.crossings)
        return f"loops {a} and {b} meet {len(self.crossings)} time(s) at {at}"


@dataclass(frozen=True)
class Embedding:
    """
    Plane realization of a code.

    Attributes:
        code: The realized DowkerSet
        crossings: The code's pairs ordered by their smaller label
        rotation: For each crossing (same order), its half-edges in counterclockwise order
        faces: Face boundaries as dart cycles; the unknot has two empty faces
    """

    code: DowkerSet
    crossings: Tuple[Pair, ...]
    rotation: Tuple[Tuple[HalfEdge, ...], ...]
    faces: Tuple[Tuple[Dart, ...], ...]

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def rotation_of(self, label: int) -> Tuple[HalfEdge, ...]:
        for pair, rot in zip(self.crossings, self.rotation):
            if label in pair:
                return rot
        raise KeyError(label)

    def describe_faces(self) -> List[str]:
        """Faces as label walks, e.g. '1>2 2>3 3<4'."""
        out = []
        for face in self.faces:
            out.append(" ".join(f"{e}{'>' if fwd else '<'}" for e, fwd in face) or "(circle)")
        return out


@dataclass(frozen=True)
class Undrawable:
    """Definitive negative answer from realize, with the reason and any loop witness."""

    code: DowkerSet
    reason: str
    witness: Optional[LoopWitness] = None

    def describe(self) -> str:
        detail = f"; {self.witness.describe()}" if self.witness else ""
        return f"{self.reason}{detail}"


Realization = Union[Embedding, Undrawable]


# ==================== Necessary Conditions ====================

def parity_filter(s: DowkerSet) -> bool:
    """True iff every pair joins an odd and an even label (necessary, not sufficient)."""
    return is_parity_code(s)


def _interval_loops(i: int, j: int, two_n: int):
    """The two loops closed at crossing {i, j} (i < j): labels i..j and j..2n,1..i."""
    first = tuple(range(i, j + 1))
    second = tuple(range(j, two_n + 1)) + tuple(range(1, i + 1))
    return first, second


def _loop_edges(loop: Tuple[int, ...]) -> frozenset:
    return frozenset(loop[:-1])


def interval_loop_witness(s: DowkerSet) -> Optional[LoopWitness]:
    """
    Scan loop pairs for an odd number of transversal meetings.

    Each crossing {i, j} cuts the curve into two loops. Two loops that share
    no segment must cross an even number of times in the plane; the two loops
    of one crossing only touch at it. Crossings are scanned by smaller label,
    and the first violating pair is returned.

    Returns:
        LoopWitness or None (None does not prove drawability)

    Example:
        >>> interval_loop_witness(validate_set([(1, 3), (2, 4)])).first
        (1, 2, 3)
    """
    two_n = s.two_n
    if two_n < 4:
        return None
    ordered = sorted(s.pairs, key=lambda p: min(p))
    loops = []
    for o, u in ordered:
        i, j = min(o, u), max(o, u)
        a, b = _interval_loops(i, j, two_n)
        loops.append(((a, _loop_edges(a)), (b, _loop_edges(b))))

    def meetings(first: Tuple[int, ...], second: Tuple[int, ...]) -> Tuple[Pair, ...]:
        inner_a = set(first[1:-1])
        inner_b = set(second[1:-1])
        hits = []
        for o, u in s.pairs:
            if (o in inner_a and u in inner_b) or (u in inner_a and o in inner_b):
                hits.append((o, u))
        return tuple(hits)

    for x, halves_x in enumerate(loops):
        (a, _), (b, _) = halves_x
        hits = meetings(a, b)
        if len(hits) % 2 == 1:
            return LoopWitness(a, b, hits)
        for halves_y in loops[x + 1:]:
            for loop_x, edges_x in halves_x:
                for loop_y, edges_y in halves_y:
                    if edges_x & edges_y:
                        continue
                    hits = meetings(loop_x, loop_y)
                    if len(hits) % 2 == 1:
                        return LoopWitness(loop_x, loop_y, hits)
    return None


# ==================== Rotation Systems ====================

def _ordered_crossings(s: DowkerSet) -> Tuple[Pair, ...]:
    return tuple(sorted(s.pairs, key=lambda p: min(p)))


def _transversal_orders(pair: Pair) -> Tuple[Tuple[HalfEdge, ...], Tuple[HalfEdge, ...]]:
    """The two counterclockwise orders in which the passages of a crossing alternate."""
    a, b = min(pair), max(pair)
    first = ((a, IN), (b, IN), (a, OUT), (b, OUT))
    second = ((a, IN), (b, OUT), (a, OUT), (b, IN))
    return first, second


def _opposite(h: HalfEdge, two_n: int) -> HalfEdge:
    label, end = h
    if end == OUT:
        return (label % two_n + 1, IN)
    return ((label - 2) % two_n + 1, OUT)


def trace_faces(two_n: int, rotation: Sequence[Sequence[HalfEdge]]) -> Tuple[Tuple[Dart, ...], ...]:
    """
    Faces of a rotation system as orbits of (next counterclockwise) ∘ (other end of edge).

    Args:
        two_n: Number of labels
        rotation: Counterclockwise half-edge order per crossing

    Returns:
        Dart cycles, ordered by their first half-edge
    """
    successor: Dict[HalfEdge, HalfEdge] = {}
    for rot in rotation:
        for idx, h in enumerate(rot):
            successor[h] = rot[(idx + 1) % len(rot)]

    faces = []
    seen = set()
    for start in sorted(successor):
        if start in seen:
            continue
        face = []
        h = start
        while h not in seen:
            seen.add(h)
            label, end = h
            if end == OUT:
                face.append((label, True))
            else:
                face.append(((label - 2) % two_n + 1, False))
            h = successor[_opposite(h, two_n)]
        faces.append(tuple(face))
    return tuple(faces)


def _embedding(s: DowkerSet, crossings, rotation) -> Optional[Embedding]:
    faces = trace_faces(s.two_n, rotation)
    if len(faces) != s.n + 2:
        return None
    return Embedding(s, tuple(crossings), tuple(tuple(r) for r in rotation), faces)


def _unknot_embedding(s: DowkerSet) -> Embedding:
    return Embedding(s, (), (), ((), ()))


def exhaustive_realize(s: DowkerSet) -> Optional[Embedding]:
    """
    Search every transversal rotation system for one with n+2 faces.

    The first crossing's order is fixed (the other choice is its reflection),
    leaving 2^(n-1) candidates tried in lexicographic order.
    """
    if s.n == 0:
        return _unknot_embedding(s)
    crossings = _ordered_crossings(s)
    options = [_transversal_orders(p) for p in crossings]
    for choice in product((0, 1), repeat=s.n - 1):
        rotation = [options[0][0]] + [opts[c] for opts, c in zip(options[1:], choice)]
        found = _embedding(s, crossings, rotation)
        if found is not None:
            return found
    return None


def _gadget_graph(s: DowkerSet, crossings: Sequence[Pair]) -> nx.Graph:
    """
    One wheel per crossing (hub plus a rim 4-cycle alternating the two passages)
    and one subdivided edge per curve segment.
    """
    two_n = s.two_n
    graph = nx.Graph()
    for idx, pair in enumerate(crossings):
        hub = ("x", idx)
        rim = [("h",) + h for h in _transversal_orders(pair)[0]]
        for k, node in enumerate(rim):
            graph.add_edge(hub, node)
            graph.add_edge(node, rim[(k + 1) % 4])
    for label in range(1, two_n + 1):
        mid = ("e", label)
        graph.add_edge(("h", label, OUT), mid)
        graph.add_edge(mid, ("h", label % two_n + 1, IN))
    return graph


def _planar_rotation(s: DowkerSet, crossings: Sequence[Pair]) -> Optional[List[Tuple[HalfEdge, ...]]]:
    is_planar, embedding = nx.check_planarity(_gadget_graph(s, crossings), counterexample=False)
    if not is_planar:
        return None
    ccw_orders = []
    for idx in range(len(crossings)):
        clockwise = [tuple(node[1:]) for node in embedding.neighbors_cw_order(("x", idx))]
        ccw_orders.append(list(reversed(clockwise)))

    # Reflect the whole plane if needed so the first crossing reads the same way
    # as in exhaustive_realize; the result is then independent of networkx's choice.
    if not _same_cycle(ccw_orders[0], _transversal_orders(crossings[0])[0]):
        ccw_orders = [list(reversed(order)) for order in ccw_orders]

    rotation = []
    for ccw in ccw_orders:
        start = ccw.index(min(ccw))
        rotation.append(tuple(ccw[start:] + ccw[:start]))
    return rotation


def _same_cycle(order: Sequence[HalfEdge], target: Sequence[HalfEdge]) -> bool:
    if len(order) != len(target) or target[0] not in order:
        return False
    start = list(order).index(target[0])
    return tuple(order[start:]) + tuple(order[:start]) == tuple(target)


def realize(s: DowkerSet) -> Realization:
    """
    Realize a code in the plane or prove it undrawable.

    The crossing-gadget graph is planar exactly when the code is drawable;
    the rotation read from networkx's planar embedding is re-checked by
    counting faces (n+2), falling back to the exhaustive search if the
    check fails.

    Returns:
        Embedding (drawable) or Undrawable with the reason and a loop witness if one exists

    Example:
        >>> realize(validate_set([(1, 4), (3, 6), (5, 2)])).face_count
        5
    """
    if s.n == 0:
        return _unknot_embedding(s)
    if not parity_filter(s):
        return Undrawable(s, "odd label paired with odd label", interval_loop_witness(s))

    crossings = _ordered_crossings(s)
    rotation = _planar_rotation(s, crossings)
    if rotation is None:
        return Undrawable(s, "crossing graph is not planar", interval_loop_witness(s))

    found = _embedding(s, crossings, rotation)
    if found is None:
        logger.debug(f"planar rotation failed the face count for {s}; searching exhaustively")
        found = exhaustive_realize(s)
        if found is None:
            return Undrawable(s, "no rotation system has n+2 faces", interval_loop_witness(s))
    return found


def is_drawable(s: DowkerSet) -> bool:
    return isinstance(realize(s), Embedding)


# ==================== Crossing Signs ====================

def crossing_signs(e: Embedding) -> List[CrossingSign]:
    """
    Sign of every crossing, in the embedding's crossing order.

    A crossing is positive when its counterclockwise order is
    (over in, under in, over out, under out): the under-strand passes
    from right to left as seen along the over-strand.
    """
    signs = []
    for (o, u), rot in zip(e.crossings, e.rotation):
        positive = ((o, IN), (u, IN), (o, OUT), (u, OUT))
        start = rot.index((o, IN))
        cyclic = rot[start:] + rot[:start]
        signs.append(CrossingSign((o, u), 1 if tuple(cyclic) == positive else -1))
    return signs


def sign_map(e: Embedding) -> Dict[int, int]:
    """Sign per crossing keyed by its over label."""
    return {cs.crossing[0]: cs.sign for cs in crossing_signs(e)}


# ==================== Equal-Drawability Moves ====================

def _remove_crossings(s: DowkerSet, overs: Sequence[int]) -> DowkerSet:
    drop = set(overs)
    return from_gauss_sequence([p for p in to_gauss_sequence(s) if p[0] not in drop])


def _curl_site(s: DowkerSet) -> Optional[int]:
    two_n = s.two_n
    for label in range(1, two_n + 1):
        nxt = label % two_n + 1
        if s.partners()[label] == nxt:
            return label
    return None


def _twist_site(s: DowkerSet) -> Optional[Tuple[int, int]]:
    """
    First label p such that passages p, p+1, p+2 lie on three distinct crossings
    whose other passages are also consecutive (same or reversed order).

    Returns:
        (over label of the middle crossing, over label of the last crossing)
    """
    two_n = s.two_n
    if s.n < 3:
        return None
    seq = [c for c, _ in to_gauss_sequence(s)]
    positions: Dict[int, List[int]] = {}
    for pos, c in enumerate(seq):
        positions.setdefault(c, []).append(pos)

    def other(pos: int) -> int:
        a, b = positions[seq[pos]]
        return b if a == pos else a

    for p in range(two_n):
        trio = [p, (p + 1) % two_n, (p + 2) % two_n]
        crossings = [seq[x] for x in trio]
        if len(set(crossings)) < 3:
            continue
        q = [other(x) for x in trio]
        forward = all((q[k + 1] - q[k]) % two_n == 1 for k in range(2))
        backward = all((q[k] - q[k + 1]) % two_n == 1 for k in range(2))
        if forward or backward:
            return crossings[1], crossings[2]
    return None


def reduce_step(s: DowkerSet) -> Optional[DowkerSet]:
    """
    Apply one drawability-preserving reduction, or return None at a fixed point.

    Move I removes a curl (i, i+1); move II removes the last two crossings of a
    run of three consecutive crossings between the same two strands.
    """
    curl = _curl_site(s)
    if curl is not None:
        over = curl if s.over_flags()[curl] else s.partners()[curl]
        return _remove_crossings(s, [over])
    twist = _twist_site(s)
    if twist is not None:
        return _remove_crossings(s, twist)
    return None


def reduce_class(s: DowkerSet) -> DowkerSet:
    """
    Shrink a code to a fixed point of moves I and II (drawability unchanged).

    Example:
        >>> reduce_class(validate_set([(1, 2), (3, 6), (5, 4)])).n
        0
    """
    current = s
    while True:
        step = reduce_step(current)
        if step is None:
            return current
        current = step


def substitute_triangle(s: DowkerSet, site: Tuple[int, int, int, int, int, int]) -> DowkerSet:
    """
    Move III on labels (i, i', j, j', k, k'): crossings {i,j}, {i',k}, {j',k'}
    with |i'-i| = |j'-j| = |k'-k| = 1 become {i,k'}, {i',j'}, {j,k}.

    Raises:
        ValueError: The three crossings are not present with the stated adjacency
    """
    i, i2, j, j2, k, k2 = site
    two_n = s.two_n
    partner = s.partners()
    adjacent = all((a - b) % two_n in (1, two_n - 1) for a, b in ((i, i2), (j, j2), (k, k2)))
    if not adjacent or partner[i] != j or partner[i2] != k or partner[j2] != k2:
        raise ValueError(f"no triangle at {site}")
    return swap_passages(s, [(i, i2), (j, j2), (k, k2)])


__all__ = [
    "IN",
    "OUT",
    "HalfEdge",
    "Dart",
    "CrossingSign",
    "LoopWitness",
    "Embedding",
    "Undrawable",
    "Realization",
    "parity_filter",
    "interval_loop_witness",
    "trace_faces",
    "exhaustive_realize",
    "realize",
    "is_drawable",
    "crossing_signs",
    "sign_map",
    "reduce_step",
    "reduce_class",
    "substitute_triangle",
]
