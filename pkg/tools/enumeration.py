"""
Projection Enumeration.

Generates one canonical code per orbit of drawable prime projections with
k <= n crossings. A candidate is a permutation p of the even labels
(p_i is the partner of odd label 2i+1) together with a binary word
(bit i = 0 puts the odd label over). Shadows are filtered before any word
is tried:

- no kinks, and p_0 - 1 equal to the least circular gap (canonical codes start with it)
- the even-partner sequence is minimal over all shifts and reversals
- drawable, with no closed label interval (connected sums are skipped)

Each surviving shadow contributes the words whose code is its own canonical form.
Enumeration order is (k, permutation rank, word), which is what the
resumable EnumerationCursor records.
"""

import json
import math
import sys
import time
from dataclasses import asdict, dataclass
from itertools import islice, permutations
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import CHECKPOINT_EVERY
from tools.dowker import (
    UNKNOT,
    CanonicalCode,
    DowkerSet,
    canonicalize,
    closed_intervals,
    code_key,
    format_code,
    parse_code,
    relabel,
)
from tools.drawability import is_drawable
from utils.errors import ResourceBudgetExceededError
from utils.logger import logger
from utils.parallel import ordered_map

# Permutation ranks handled per work unit
CHUNK_SIZE = 2520


# ==================== Cursor ====================

@dataclass(frozen=True)
class EnumerationCursor:
    """
    Position of the next unprocessed assignment.

    Attributes:
        k: Crossing count being enumerated
        perm_rank: Index of the permutation in lexicographic order
        word: Binary word index within that permutation
    """

    k: int = 0
    perm_rank: int = 0
    word: int = 0

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "EnumerationCursor":
        return cls(int(data["k"]), int(data["perm_rank"]), int(data["word"]))


def write_cursor_file(path: Path, max_crossings: int, cursor: EnumerationCursor, found: Sequence[CanonicalCode]) -> None:
    """Persist the cursor and the codes found before it."""
    payload = {
        "max_crossings": max_crossings,
        "cursor": cursor.to_dict(),
        "found": [format_code(c.code) for c in found],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(payload, indent=2))
    tmp.replace(path)


def read_cursor_file(path: Path) -> Tuple[int, EnumerationCursor, List[CanonicalCode]]:
    """Load (max_crossings, cursor, found) written by write_cursor_file."""
    payload = json.loads(Path(path).read_text())
    found = [canonicalize(parse_code(text)) for text in payload["found"]]
    return int(payload["max_crossings"]), EnumerationCursor.from_dict(payload["cursor"]), found


# ==================== Shadow Filters ====================

def shadow_code(perm: Sequence[int]) -> DowkerSet:
    """Code with every odd label over: pairs (2i+1, p_i)."""
    return DowkerSet.from_pairs((2 * i + 1, e) for i, e in enumerate(perm))


def min_circular_gap(perm: Sequence[int]) -> int:
    two_n = 2 * len(perm)
    return min(min(abs(e - (2 * i + 1)), two_n - abs(e - (2 * i + 1))) for i, e in enumerate(perm))


def is_minimal_shadow(shadow: DowkerSet) -> bool:
    """The even-partner sequence is the least over all 2n shifts and both orientations."""
    evens = code_key(shadow)[2]
    for c in range(shadow.two_n):
        for eps in (1, -1):
            if code_key(relabel(shadow, c, eps))[2] < evens:
                return False
    return True


def accept_shadow(perm: Sequence[int]) -> bool:
    """All word-independent filters, cheapest first."""
    gap = min_circular_gap(perm)
    if gap < 3 or perm[0] - 1 != gap:
        return False
    shadow = shadow_code(perm)
    if not is_minimal_shadow(shadow):
        return False
    if closed_intervals(shadow):
        return False
    return is_drawable(shadow)


def word_code(perm: Sequence[int], word: int) -> DowkerSet:
    """Bit i of word set means the even partner of 2i+1 passes over."""
    pairs = []
    for i, e in enumerate(perm):
        odd = 2 * i + 1
        pairs.append((e, odd) if (word >> i) & 1 else (odd, e))
    return DowkerSet.from_pairs(pairs)


def _scan_chunk(task: Tuple[int, int, int, int]) -> List[Tuple[int, int, str]]:
    """
    Scan permutation ranks [start, stop) of crossing count k, beginning at `word`
    for the first permutation.

    Returns:
        (rank, word, code text) of every canonical code found, in order
    """
    k, start, stop, first_word = task
    evens = tuple(range(2, 2 * k + 1, 2))
    found = []
    for rank, perm in enumerate(islice(permutations(evens), start, stop), start=start):
        if not accept_shadow(perm):
            continue
        for word in range(first_word if rank == start else 0, 1 << k):
            code = word_code(perm, word)
            if canonicalize(code).code == code:
                found.append((rank, word, format_code(code)))
    return found


# ==================== Enumerator ====================

class ProjectionEnumerator:
    """
    Resumable, optionally parallel enumeration of canonical prime projections.

    Args:
        max_crossings: Largest k enumerated
        workers: Process count for shadow scanning
        checkpoint_every: Assignments between on_checkpoint calls
        on_checkpoint: Called with (cursor, found so far)
        should_stop: Polled after every work unit; True aborts with ResourceBudgetExceededError
        progress: Show tqdm bars
    """

    def __init__(
        self,
        max_crossings: int,
        workers: int = 1,
        checkpoint_every: int = CHECKPOINT_EVERY,
        on_checkpoint: Optional[Callable[[EnumerationCursor, List[CanonicalCode]], None]] = None,
        should_stop: Optional[Callable[[], bool]] = None,
        progress: bool = False,
    ):
        if max_crossings < 0:
            raise ValueError(f"max_crossings must be >= 0, got {max_crossings}")
        self.max_crossings = max_crossings
        self.workers = max(1, workers)
        self.checkpoint_every = max(1, checkpoint_every)
        self.on_checkpoint = on_checkpoint
        self.should_stop = should_stop
        self.progress = progress

    def _tasks(self, k: int, cursor: EnumerationCursor) -> List[Tuple[int, int, int, int]]:
        total = math.factorial(k)
        start = cursor.perm_rank if cursor.k == k else 0
        tasks = []
        first_word = cursor.word if cursor.k == k else 0
        while start < total:
            stop = min(start + CHUNK_SIZE, total)
            tasks.append((k, start, stop, first_word))
            start, first_word = stop, 0
        return tasks

    def run(
        self,
        cursor: Optional[EnumerationCursor] = None,
        found: Optional[List[CanonicalCode]] = None,
    ) -> List[CanonicalCode]:
        """
        Enumerate from the cursor (default: the beginning).

        Returns:
            Canonical codes in enumeration order, including those passed in `found`

        Raises:
            ResourceBudgetExceededError: should_stop returned True; .cursor holds the resume point
        """
        cursor = cursor or EnumerationCursor()
        found = list(found or [])
        since_checkpoint = 0

        if cursor == EnumerationCursor() and not found:
            found.append(canonicalize(UNKNOT))
            cursor = EnumerationCursor(1, 0, 0)

        for k in range(max(cursor.k, 1), self.max_crossings + 1):
            started = time.time()
            tasks = self._tasks(k, cursor)
            before = len(found)
            results = ordered_map(
                _scan_chunk, tasks, workers=self.workers,
                desc=f"k={k}", total=len(tasks), progress=self.progress,
            )
            for (task_k, start_rank, stop, _word), chunk in zip(tasks, results):
                found.extend(canonicalize(parse_code(text)) for _, _, text in chunk)
                since_checkpoint += (stop - start_rank) << task_k
                cursor = EnumerationCursor(k, stop, 0) if stop < math.factorial(k) else EnumerationCursor(k + 1, 0, 0)
                if since_checkpoint >= self.checkpoint_every and self.on_checkpoint:
                    self.on_checkpoint(cursor, found)
                    since_checkpoint = 0
                if self.should_stop and self.should_stop():
                    if self.on_checkpoint:
                        self.on_checkpoint(cursor, found)
                    raise ResourceBudgetExceededError("enumerate", time.time() - started, cursor)
            logger.debug(f"k={k}: {len(found) - before} canonical projections in {time.time() - started:.1f}s")
            cursor = EnumerationCursor(k + 1, 0, 0)

        return found


def enumerate_projections(n: int, workers: int = 1) -> Iterator[CanonicalCode]:
    """
    Canonical drawable prime projections with at most n crossings, unknot first.

    Example:
        >>> [c.n for c in enumerate_projections(3)]
        [0, 3, 3]
    """
    yield from ProjectionEnumerator(n, workers=workers).run()


__all__ = [
    "CHUNK_SIZE",
    "EnumerationCursor",
    "write_cursor_file",
    "read_cursor_file",
    "shadow_code",
    "min_circular_gap",
    "is_minimal_shadow",
    "accept_shadow",
    "word_code",
    "ProjectionEnumerator",
    "enumerate_projections",
]
