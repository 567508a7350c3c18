"""
Classification and Certificates.

Turns a merge partition into a knot table. Every prime class gets a
certificate (canonical code, DT sequence, Alexander polynomial, Fox coloring
counts). Classes sharing an Alexander polynomial are compared with
conjugation-class coloring counts of S_p for 2 <= p <= m; pairs that still
agree are reported as UNRESOLVED rather than assumed distinct.
"""

import sys
import time
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import AFFINE_MODULI
from tools.dowker import CanonicalCode, DowkerSet, dt_sequence, format_code
from tools.invariants import (
    ColoringMatrix,
    LaurentPoly,
    affine_matrix,
    alexander_poly,
    conjugation_matrix,
    count_colorings,
    cycle_types,
)
from tools.merging import EquivalenceClass, MergeRecord, Partition
from utils.logger import logger
from utils.parallel import ordered_map


# ==================== Certificates ====================

@dataclass
class Certificate:
    """Invariant values recorded for one class representative."""

    code: DowkerSet
    alexander: LaurentPoly
    colorings: Dict[str, int] = field(default_factory=dict)

    @property
    def record(self) -> str:
        """`<code> | dt: ... | alexander: ... | colorings(<id>): <count> ...`"""
        dt = dt_sequence(self.code)
        dt_text = " ".join(str(x) for x in dt) if dt else "-"
        parts = [
            format_code(self.code),
            f"dt: {dt_text}",
            "alexander: " + " ".join(str(c) for c in self.alexander.coeffs),
        ]
        parts.extend(f"colorings({name}): {count}" for name, count in self.colorings.items())
        return " | ".join(parts)


@dataclass(frozen=True)
class Separation:
    """Two classes told apart by one invariant."""

    first: DowkerSet
    second: DowkerSet
    invariant: str
    first_value: str
    second_value: str


@dataclass
class KnotClass:
    representative: CanonicalCode
    crossing_number: int
    members: Tuple[CanonicalCode, ...]
    certificate: Certificate

    @property
    def record(self) -> str:
        head, _, tail = self.certificate.record.partition(" | ")
        return f"{head} | crossings={self.crossing_number} | {tail}"


@dataclass
class KnotTable:
    """
    Classified knot types up to max_crossings.

    Attributes:
        classes: Prime classes sorted by (crossing number, representative)
        merges: Merge records from the partition
        separations: Pairs with equal Alexander polynomials told apart by colorings
        unresolved: Pairs no computed invariant separates
        composite_count: Classes of composite knots left out of the table
    """

    max_crossings: int
    max_group: int
    classes: List[KnotClass]
    merges: List[MergeRecord] = field(default_factory=list)
    separations: List[Separation] = field(default_factory=list)
    unresolved: List[Tuple[CanonicalCode, CanonicalCode]] = field(default_factory=list)
    composite_count: int = 0

    def histogram(self) -> List[Tuple[int, int]]:
        """(crossing number, class count) for 0..max_crossings."""
        counts = [0] * (self.max_crossings + 1)
        for cls in self.classes:
            if cls.crossing_number <= self.max_crossings:
                counts[cls.crossing_number] += 1
        return list(enumerate(counts))

    def counts(self) -> List[int]:
        return [count for _, count in self.histogram()]

    def class_with(self, code: CanonicalCode) -> Optional[KnotClass]:
        for cls in self.classes:
            if code in cls.members:
                return cls
        return None


# ==================== Classification ====================

def fox_matrices(moduli: Sequence[int]) -> List[ColoringMatrix]:
    """Affine tables with t = q - 1 (Fox q-colorings)."""
    return [affine_matrix(q, q - 1) for q in moduli]


def conjugation_matrices(m: int) -> List[ColoringMatrix]:
    """Every non-identity conjugacy class of S_p for 2 <= p <= m."""
    return [conjugation_matrix(p, ct) for p in range(2, m + 1) for ct in cycle_types(p)]


def _certificate_task(task: Tuple[Tuple[Tuple[int, int], ...], Tuple[int, ...]]) -> Tuple[Tuple[Tuple[int, int], ...], Dict[str, int]]:
    pairs, moduli = task
    code = DowkerSet(pairs)
    colorings = {str(matrix): count_colorings(code, matrix) for matrix in fox_matrices(moduli)}
    return alexander_poly(code).terms, colorings


def distinguish(a: KnotClass, b: KnotClass) -> Optional[Separation]:
    """First recorded invariant whose values differ between two classes, if any."""
    ca, cb = a.certificate, b.certificate
    if ca.alexander != cb.alexander:
        return Separation(ca.code, cb.code, "alexander", str(ca.alexander), str(cb.alexander))
    for name in ca.colorings:
        if name in cb.colorings and ca.colorings[name] != cb.colorings[name]:
            return Separation(ca.code, cb.code, f"colorings({name})", str(ca.colorings[name]), str(cb.colorings[name]))
    return None


def classify(
    partition: Partition,
    m: int,
    affine_moduli: Sequence[int] = tuple(AFFINE_MODULI),
    workers: int = 1,
    progress: bool = False,
) -> KnotTable:
    """
    Certify prime classes and separate those with equal Alexander polynomials.

    Args:
        partition: Output of merge_equivalences
        m: Largest symmetric-group degree used for conjugation colorings
        affine_moduli: Fox coloring moduli recorded in every certificate
        workers: Processes for certificate computation

    Returns:
        KnotTable with every pair of classes either separated or listed as unresolved
    """
    started = time.time()
    prime: List[EquivalenceClass] = sorted(
        partition.prime_classes, key=lambda c: (c.crossing_number, c.representative.key)
    )
    tasks = [(c.representative.code.pairs, tuple(affine_moduli)) for c in prime]
    results = ordered_map(_certificate_task, tasks, workers=workers, desc="certificates", total=len(tasks), progress=progress)

    classes: List[KnotClass] = []
    for eq, (terms, colorings) in zip(prime, results):
        certificate = Certificate(eq.representative.code, LaurentPoly(terms), colorings)
        classes.append(KnotClass(eq.representative, eq.crossing_number, eq.members, certificate))

    by_alexander: Dict[LaurentPoly, List[KnotClass]] = {}
    for cls in classes:
        by_alexander.setdefault(cls.certificate.alexander, []).append(cls)

    matrices = conjugation_matrices(m)
    separations: List[Separation] = []
    unresolved: List[Tuple[CanonicalCode, CanonicalCode]] = []

    def coloring(cls: KnotClass, matrix: ColoringMatrix) -> int:
        name = str(matrix)
        if name not in cls.certificate.colorings:
            cls.certificate.colorings[name] = count_colorings(cls.representative.code, matrix)
        return cls.certificate.colorings[name]

    for group in by_alexander.values():
        if len(group) < 2:
            continue
        for a, b in combinations(group, 2):
            verdict = distinguish(a, b)
            if verdict is None:
                for matrix in matrices:
                    if coloring(a, matrix) != coloring(b, matrix):
                        verdict = distinguish(a, b)
                        break
            if verdict is None:
                unresolved.append((a.representative, b.representative))
            else:
                separations.append(verdict)

    if unresolved:
        logger.warning(f"{len(unresolved)} class pair(s) left UNRESOLVED at m={m}")
    logger.debug(f"classified {len(classes)} classes in {time.time() - started:.1f}s")
    return KnotTable(
        max_crossings=partition.max_crossings,
        max_group=m,
        classes=classes,
        merges=list(partition.records),
        separations=separations,
        unresolved=unresolved,
        composite_count=partition.composite_count,
    )


__all__ = [
    "Certificate",
    "Separation",
    "KnotClass",
    "KnotTable",
    "fox_matrices",
    "conjugation_matrices",
    "distinguish",
    "classify",
]
