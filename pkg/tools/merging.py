"""
Equivalence Merging.

Every code in the pool is moved once in every possible way (results stay
within the crossing bound); each result is split into prime fragments and
the source is identified with what remains:

- no fragment: the unknot
- one fragment: that fragment's class
- several fragments: fragments already known to be unknots are dropped and
  the rule is retried until nothing changes; when two or more fragments have
  non-trivial Alexander polynomials the source is a composite knot and its
  class is excluded from the table

Unions are applied in sorted edge order and every class is represented by
its least canonical code, so the partition does not depend on processing
order or worker count.
"""

import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import UNKNOT, CanonicalCode, DowkerSet, canonicalize, format_code, prime_factors
from tools.invariants import ONE, alexander_poly
from tools.moves import MoveDescriptor, apply_move, neighbor_moves
from utils.logger import logger
from utils.parallel import ordered_map


# ==================== Union-Find ====================

class UnionFind:
    """
    Union-find over hashable keys with path compression and union by rank.

    Keys are added on first use. Each root also remembers the least key of
    its set, which is what representative() returns.
    """

    def __init__(self, keys: Iterable[Hashable] = ()) -> None:
        self._parent: Dict[Hashable, Hashable] = {}
        self._rank: Dict[Hashable, int] = {}
        self._least: Dict[Hashable, Hashable] = {}
        for key in keys:
            self.add(key)

    def add(self, key: Hashable) -> None:
        if key not in self._parent:
            self._parent[key] = key
            self._rank[key] = 0
            self._least[key] = key

    def __contains__(self, key: Hashable) -> bool:
        return key in self._parent

    def find(self, key: Hashable) -> Hashable:
        self.add(key)
        parent = self._parent
        while parent[key] != key:
            parent[key] = parent[parent[key]]
            key = parent[key]
        return key

    def union(self, a: Hashable, b: Hashable) -> bool:
        """Merge the sets of a and b; False if they were already one set."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        self._least[ra] = min(self._least[ra], self._least[rb])
        return True

    def representative(self, key: Hashable) -> Hashable:
        return self._least[self.find(key)]

    def groups(self) -> Dict[Hashable, List[Hashable]]:
        """representative -> sorted members"""
        out: Dict[Hashable, List[Hashable]] = {}
        for key in self._parent:
            out.setdefault(self.representative(key), []).append(key)
        return {rep: sorted(members) for rep, members in sorted(out.items())}


# ==================== Records ====================

@dataclass(frozen=True)
class MergeRecord:
    """
    One identification with a replayable trace.

    Applying `move` to `source` yields a code whose prime fragments include
    `target` (or none at all when target is the unknot).
    """

    source: DowkerSet
    target: DowkerSet
    move: MoveDescriptor
    via: str = "move"

    @property
    def text(self) -> str:
        return f"{format_code(self.source)} -> {format_code(self.target)} via {self.move.text} [{self.via}]"


@dataclass(frozen=True)
class EquivalenceClass:
    representative: CanonicalCode
    members: Tuple[CanonicalCode, ...]
    composite: bool = False

    @property
    def crossing_number(self) -> int:
        return min(m.n for m in self.members)


@dataclass
class Partition:
    """Result of merge_equivalences."""

    max_crossings: int
    classes: List[EquivalenceClass]
    records: List[MergeRecord] = field(default_factory=list)

    def class_of(self, code: CanonicalCode) -> Optional[EquivalenceClass]:
        for cls in self.classes:
            if code in cls.members:
                return cls
        return None

    @property
    def prime_classes(self) -> List[EquivalenceClass]:
        return [c for c in self.classes if not c.composite]

    @property
    def composite_count(self) -> int:
        return sum(1 for c in self.classes if c.composite)


def replay_record(record: MergeRecord) -> bool:
    """
    Re-apply a record's move and confirm the target is among the prime fragments.

    Fragments merged through the pending fixpoint may all be unknot fragments,
    in which case the target is the unknot and any fragment list is accepted.
    """
    result = apply_move(record.source, record.move)
    fragments = {canonicalize(f).key for f in prime_factors(result)}
    target = canonicalize(record.target).key
    if record.target.n == 0:
        return not fragments or record.via == "fragments"
    return target in fragments


# ==================== Merging ====================

Edge = Tuple[tuple, tuple, MoveDescriptor, str]


def _neighborhood(task: Tuple[Tuple[Tuple[int, int], ...], int]) -> List[Tuple[MoveDescriptor, Tuple[Tuple[int, int], ...]]]:
    """Moves from one pool code, as (descriptor, result pairs); runs in worker processes."""
    pairs, max_n = task
    source = DowkerSet(pairs)
    return [(r.move, r.code.pairs) for r in neighbor_moves(source, max_n)]


def merge_equivalences(
    pool: Sequence[CanonicalCode],
    n: int,
    workers: int = 1,
    progress: bool = False,
) -> Partition:
    """
    Partition the pool into classes connected by moves within n crossings.

    Args:
        pool: Canonical codes (the unknot is added if missing)
        n: Crossing bound for intermediate diagrams
        workers: Processes for neighborhood generation

    Returns:
        Partition with classes sorted by representative and the merge records
    """
    started = time.time()
    unknot = canonicalize(UNKNOT)
    codes: Dict[tuple, CanonicalCode] = {c.key: c for c in pool}
    codes.setdefault(unknot.key, unknot)
    ordered = [codes[key] for key in sorted(codes)]

    uf = UnionFind(key for key in sorted(codes))
    edges: List[Edge] = []
    pending: List[Tuple[tuple, MoveDescriptor, Tuple[CanonicalCode, ...]]] = []

    tasks = [(c.code.pairs, n) for c in ordered]
    results = ordered_map(_neighborhood, tasks, workers=workers, desc="moves", total=len(tasks), progress=progress)
    for source, moves in zip(ordered, results):
        for move, result_pairs in moves:
            result = DowkerSet(result_pairs)
            fragments = tuple(canonicalize(f) for f in prime_factors(result))
            if not fragments:
                edges.append((source.key, unknot.key, move, "unknot"))
            elif len(fragments) == 1:
                via = "move" if fragments[0].n == result.n else "fragment"
                edges.append((source.key, fragments[0].key, move, via))
            else:
                pending.append((source.key, move, fragments))
            for fragment in fragments:
                codes.setdefault(fragment.key, fragment)

    records: List[MergeRecord] = []

    def apply(edge: Edge) -> bool:
        a, b, move, via = edge
        if uf.union(a, b):
            records.append(MergeRecord(codes[a].code, codes[b].code, move, via))
            return True
        return False

    for edge in sorted(edges, key=lambda e: (e[0], e[1], e[2].text)):
        apply(edge)

    composite_sources: Set[tuple] = set()
    alexander_cache: Dict[tuple, bool] = {}

    def nontrivial(code: CanonicalCode) -> bool:
        if code.key not in alexander_cache:
            alexander_cache[code.key] = alexander_poly(code.code) != ONE
        return alexander_cache[code.key]

    pending.sort(key=lambda p: (p[0], p[1].text))
    changed = True
    while changed and pending:
        changed = False
        still_pending = []
        for source_key, move, fragments in pending:
            live = [f for f in fragments if uf.find(f.key) != uf.find(unknot.key)]
            if not live:
                changed |= apply((source_key, unknot.key, move, "fragments"))
            elif len(live) == 1:
                changed |= apply((source_key, live[0].key, move, "fragments"))
            elif sum(1 for f in live if nontrivial(f)) >= 2:
                composite_sources.add(source_key)
            else:
                still_pending.append((source_key, move, fragments))
        pending = still_pending

    composite_roots = {uf.find(key) for key in composite_sources}
    classes = []
    for rep, members in uf.groups().items():
        members = [codes[key] for key in members]
        composite = uf.find(rep) in composite_roots
        classes.append(EquivalenceClass(codes[rep], tuple(members), composite))

    logger.debug(
        f"merged {len(codes)} codes into {len(classes)} classes "
        f"({len(composite_roots)} composite) in {time.time() - started:.1f}s"
    )
    return Partition(n, classes, records)


__all__ = [
    "UnionFind",
    "MergeRecord",
    "EquivalenceClass",
    "Partition",
    "replay_record",
    "merge_equivalences",
]
