"""
Knot Invariants of Dowker Codes.

- alexander_poly: determinant of the crossing-relation system (sympy)
- ColoringMatrix: coloring tables obeying the three coloring axioms
- affine_matrix / conjugation_matrix: the two closed matrix families
- count_colorings: strand colorings by propagation, or mod-q rank for affine tables
- knot_determinant: |Δ(-1)|

Strands run between consecutive under-passes. Sorting the under labels
u_0 < u_1 < ... < u_{n-1}, strand t starts after u_t and ends at u_{t+1};
at the crossing whose under label is u_t the incoming strand is t-1, the
outgoing strand is t, and the over strand is the one containing the over
label. A positive crossing colors the outgoing strand M[in][over]; a
negative crossing uses the inverse operation.
"""

import sys
from bisect import bisect_left
from dataclasses import dataclass
from itertools import permutations
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy as sp
from sympy.combinatorics import Permutation

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from tools.dowker import DowkerSet
from tools.drawability import Embedding, realize, sign_map
from utils.errors import AxiomViolationError, BadParametersError, EmptyClassError, UndrawableError

T = sp.Symbol("t")


# ==================== Laurent Polynomials ====================

@dataclass(frozen=True)
class LaurentPoly:
    """
    Integer Laurent polynomial stored as sorted (exponent, coefficient) terms.

    Zero coefficients are never stored; the zero polynomial has no terms.
    """

    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        return cls.from_dict({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def from_sympy(cls, expr, var: sp.Symbol = T) -> "LaurentPoly":
        """Convert a sympy expression that is a Laurent polynomial in var with integer coefficients."""
        expr = sp.expand(sp.together(sp.expand(expr)))
        numer, denom = sp.fraction(expr)
        low = 0
        denom = sp.expand(denom)
        if denom != 1:
            dpoly = sp.Poly(denom, var)
            if len(dpoly.terms()) != 1:
                raise ValueError(f"not a Laurent polynomial in {var}: {expr}")
            (power,), scale = dpoly.terms()[0]
            if scale not in (1, -1):
                raise ValueError(f"non-integer coefficients in {expr}")
            low = -power
            numer = numer * scale
        poly = sp.Poly(sp.expand(numer), var)
        coeffs: Dict[int, int] = {}
        for (power,), c in poly.terms():
            if not c.is_integer:
                raise ValueError(f"non-integer coefficient {c} in {expr}")
            coeffs[power + low] = int(c)
        return cls.from_dict(coeffs)

    def to_sympy(self, var: sp.Symbol = T):
        return sum((c * var ** e for e, c in self.terms), sp.Integer(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return self.terms[0][0] if self.terms else 0

    @property
    def high(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    @property
    def coeffs(self) -> Tuple[int, ...]:
        """Dense coefficient vector from the lowest to the highest exponent."""
        if not self.terms:
            return (0,)
        table = dict(self.terms)
        return tuple(table.get(e, 0) for e in range(self.low, self.high + 1))

    def normalized(self) -> "LaurentPoly":
        """Divide by ±t^k so the lowest exponent is 0 and the leading coefficient is positive."""
        if not self.terms:
            return self
        sign = 1 if self.terms[-1][1] > 0 else -1
        low = self.low
        return LaurentPoly(tuple((e - low, sign * c) for e, c in self.terms))

    def evaluate(self, x: int):
        return sum(c * sp.Integer(x) ** e for e, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ONE = LaurentPoly(((0, 1),))


# ==================== Strands ====================

@dataclass(frozen=True)
class CrossingRelation:
    """Strand indices meeting at one crossing and the crossing's sign."""

    incoming: int
    outgoing: int
    over: int
    sign: int


def _embedding_of(s: DowkerSet) -> Embedding:
    e = realize(s)
    if not isinstance(e, Embedding):
        raise UndrawableError(s.text, e.witness)
    return e


def crossing_relations(s: DowkerSet, e: Optional[Embedding] = None) -> List[CrossingRelation]:
    """
    One relation per crossing, ordered by under label (so relation t produces strand t).

    Example:
        >>> [r.over for r in crossing_relations(validate_set([(1, 4), (3, 6), (5, 2)]))]
        [1, 2, 0]
    """
    if s.n == 0:
        return []
    e = e or _embedding_of(s)
    signs = sign_map(e)
    under = sorted(u for _, u in s.pairs)
    over_of_under = {u: o for o, u in s.pairs}
    n = s.n

    def strand(label: int) -> int:
        return (bisect_left(under, label) - 1) % n

    relations = []
    for t, u in enumerate(under):
        o = over_of_under[u]
        relations.append(CrossingRelation((t - 1) % n, t, strand(o), signs[o]))
    return relations


# ==================== Alexander Polynomial ====================

def alexander_matrix(s: DowkerSet, e: Optional[Embedding] = None) -> sp.Matrix:
    """
    n x n relation matrix over Z[t]: row per crossing, column per strand.

    Positive crossings contribute t·in - out + (1-t)·over, negative crossings
    in - t·out - (1-t)·over; entries add when strands coincide (kinks).
    """
    n = s.n
    matrix = sp.zeros(n, n)
    for row, rel in enumerate(crossing_relations(s, e)):
        if rel.sign > 0:
            matrix[row, rel.incoming] += T
            matrix[row, rel.outgoing] += -1
            matrix[row, rel.over] += 1 - T
        else:
            matrix[row, rel.incoming] += 1
            matrix[row, rel.outgoing] += -T
            matrix[row, rel.over] += -(1 - T)
    return matrix


def alexander_poly(s: DowkerSet, e: Optional[Embedding] = None) -> LaurentPoly:
    """
    Normalized Alexander polynomial: the (n-1) x (n-1) minor of the relation matrix.

    Example:
        >>> str(alexander_poly(validate_set([(1, 4), (3, 6), (5, 2)])))
        't^2 - t + 1'
    """
    if s.n <= 1:
        return ONE
    minor = alexander_matrix(s, e)[:-1, :-1]
    det = sp.expand(minor.det(method="bareiss"))
    return LaurentPoly.from_sympy(det, T).normalized()


def knot_determinant(s: DowkerSet, e: Optional[Embedding] = None) -> int:
    """|Δ(-1)|, the order of the first homology of the double branched cover."""
    return abs(int(alexander_poly(s, e).evaluate(-1)))


# ==================== Coloring Matrices ====================

@dataclass(frozen=True)
class ColoringMatrix:
    """
    Validated coloring table with 0-based colors: table[a][b] is the color a·b.

    Attributes:
        table: k x k rows
        family: Identifier used in certificates, e.g. 'affine 3,2' or 'conj S4 4'
    """

    table: Tuple[Tuple[int, ...], ...]
    family: str = "explicit"

    @property
    def k(self) -> int:
        return len(self.table)

    def inverse_table(self) -> Tuple[Tuple[int, ...], ...]:
        """inv[x][r] = s with table[s][r] = x (axiom 2 makes this well defined)."""
        k = self.k
        inv = [[0] * k for _ in range(k)]
        for s_ in range(k):
            for r in range(k):
                inv[self.table[s_][r]][r] = s_
        return tuple(tuple(row) for row in inv)

    def __str__(self) -> str:
        return self.family


def verify_coloring_matrix(table: Sequence[Sequence[int]], family: str = "explicit") -> ColoringMatrix:
    """
    Check the three coloring axioms and return the validated matrix.

    Axioms (0-based):
        1. M[r][r] = r
        2. s -> M[s][r] is injective for every r
        3. M[M[d][a]][b] = M[M[d][b]][M[a][b]]

    Raises:
        BadParametersError: Table is not square or has entries outside 0..k-1
        AxiomViolationError: An axiom fails; the witness gives the offending indices
    """
    rows = tuple(tuple(int(x) for x in row) for row in table)
    k = len(rows)
    if any(len(row) != k for row in rows):
        raise BadParametersError("coloring table must be square")
    if any(not 0 <= x < k for row in rows for x in row):
        raise BadParametersError(f"coloring table entries must lie in 0..{k - 1}")

    for r in range(k):
        if rows[r][r] != r:
            raise AxiomViolationError(1, (r,))

    for r in range(k):
        column = {}
        for s_ in range(k):
            value = rows[s_][r]
            if value in column:
                raise AxiomViolationError(2, (column[value], s_, r))
            column[value] = s_

    m = np.array(rows, dtype=np.int64)
    for a in range(k):
        for b in range(k):
            ab = m[a, b]
            left = m[m[:, a], b]
            right = m[m[:, b], ab]
            bad = np.nonzero(left != right)[0]
            if bad.size:
                raise AxiomViolationError(3, (int(bad[0]), a, b))

    return ColoringMatrix(rows, family)


def affine_matrix(q: int, t: int) -> ColoringMatrix:
    """
    M[a][b] = t·a + (1-t)·b mod q.

    Raises:
        BadParametersError: q < 2, or q shares a factor with t or t - 1

    Example:
        >>> affine_matrix(3, 2).table
        ((0, 2, 1), (2, 1, 0), (1, 0, 2))
    """
    if q < 2:
        raise BadParametersError(f"modulus must be at least 2, got {q}")
    if gcd(q, t) != 1 or gcd(q, t - 1) != 1:
        raise BadParametersError(f"q={q} must be coprime to t={t} and t-1={t - 1}")
    table = [[(t * a + (1 - t) * b) % q for b in range(q)] for a in range(q)]
    return verify_coloring_matrix(table, f"affine {q},{t % q}")


def _padded_cycle_type(p: int, cycle_type: Sequence[int]) -> Tuple[int, ...]:
    parts = [int(x) for x in cycle_type]
    if any(x < 1 for x in parts) or sum(parts) > p:
        raise EmptyClassError(f"cycle type {tuple(cycle_type)} is not a partition of {p}")
    parts += [1] * (p - sum(parts))
    return tuple(sorted(parts, reverse=True))


def _cycle_type_of(perm: Permutation) -> Tuple[int, ...]:
    lengths = []
    for length, count in perm.cycle_structure.items():
        lengths.extend([length] * count)
    return tuple(sorted(lengths, reverse=True))


def conjugation_matrix(p: int, cycle_type: Sequence[int]) -> ColoringMatrix:
    """
    Conjugation table on a conjugacy class of S_p: M[a][b] = g_b g_a g_b^-1.

    Colors are the class elements in lexicographic order of their one-line form.

    Args:
        p: Degree of the symmetric group
        cycle_type: Cycle lengths, fixed points may be omitted, e.g. (2,) for transpositions

    Raises:
        EmptyClassError: The cycle type is not a partition of p
    """
    if p < 1:
        raise EmptyClassError(f"symmetric group degree must be positive, got {p}")
    target = _padded_cycle_type(p, cycle_type)
    elements = [
        Permutation(list(image))
        for image in permutations(range(p))
        if _cycle_type_of(Permutation(list(image), size=p)) == target
    ]
    if not elements:
        raise EmptyClassError(f"no permutations of type {target} in S{p}")
    index = {tuple(g.array_form): i for i, g in enumerate(elements)}
    table = [[index[tuple((~gb * ga * gb).array_form)] for gb in elements] for ga in elements]
    label = ",".join(str(x) for x in target if x > 1) or "1"
    return verify_coloring_matrix(table, f"conj S{p} {label}")


def cycle_types(p: int) -> List[Tuple[int, ...]]:
    """Non-identity cycle types of S_p (partitions of p other than 1^p), fixed points dropped."""
    found = []

    def partitions(remaining: int, largest: int, prefix: Tuple[int, ...]):
        if remaining == 0:
            found.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            partitions(remaining - part, part, prefix + (part,))

    partitions(p, p, ())
    return [tuple(x for x in part if x > 1) for part in found if part[0] > 1]


def is_involutory(matrix: ColoringMatrix) -> bool:
    """M[M[a][b]][b] = a for all a, b (the operation is its own inverse)."""
    table = matrix.table
    return all(table[table[a][b]][b] == a for a in range(matrix.k) for b in range(matrix.k))


# ==================== Coloring Counts ====================

def _affine_params(matrix: ColoringMatrix) -> Optional[Tuple[int, int]]:
    if not matrix.family.startswith("affine "):
        return None
    q, t = (int(x) for x in matrix.family.split()[1].split(","))
    return q, t


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def _nullity_mod_p(rows: np.ndarray, p: int) -> int:
    """Dimension of the kernel of an integer matrix over Z/p."""
    a = rows.copy() % p
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r, col] != 0), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, col]), -1, p)) % p
        for r in range(n_rows):
            if r != rank and a[r, col] != 0:
                a[r] = (a[r] - a[r, col] * a[rank]) % p
        rank += 1
        if rank == n_rows:
            break
    return n_cols - rank


def _count_affine(relations: Sequence[CrossingRelation], n: int, q: int, t: int) -> int:
    rows = np.zeros((len(relations), n), dtype=np.int64)
    for row, rel in enumerate(relations):
        if rel.sign > 0:
            coeffs = ((rel.incoming, t), (rel.outgoing, -1), (rel.over, 1 - t))
        else:
            coeffs = ((rel.incoming, 1), (rel.outgoing, -t), (rel.over, t - 1))
        for col, value in coeffs:
            rows[row, col] += value
    return q ** _nullity_mod_p(rows, q)


def _count_by_propagation(relations: Sequence[CrossingRelation], n: int, matrix: ColoringMatrix) -> int:
    table = matrix.table
    inverse = matrix.inverse_table()
    k = matrix.k
    colors: List[Optional[int]] = [None] * n

    def apply(rel: CrossingRelation, incoming: int, over: int) -> int:
        return table[incoming][over] if rel.sign > 0 else inverse[incoming][over]

    def extend(t: int) -> int:
        if t == n:
            closing = relations[0]
            return int(apply(closing, colors[closing.incoming], colors[closing.over]) == colors[0])
        rel = relations[t]
        if colors[rel.over] is None:
            total = 0
            for c in range(k):
                colors[rel.over] = c
                total += extend(t)
            colors[rel.over] = None
            return total
        value = apply(rel, colors[rel.incoming], colors[rel.over])
        if colors[t] is not None:
            return extend(t + 1) if colors[t] == value else 0
        colors[t] = value
        total = extend(t + 1)
        colors[t] = None
        return total

    total = 0
    for c in range(k):
        colors[0] = c
        total += extend(1)
    return total


def count_colorings(s: DowkerSet, matrix: ColoringMatrix, e: Optional[Embedding] = None) -> int:
    """
    Number of strand colorings satisfying the crossing relation everywhere.

    Affine tables with prime modulus are counted as q^(kernel dimension) of the
    linear system; everything else by strand-by-strand propagation with
    branching on over strands that are not yet colored.

    Example:
        >>> count_colorings(validate_set([(1, 4), (3, 6), (5, 2)]), affine_matrix(3, 2))
        9
    """
    if s.n == 0:
        return matrix.k
    relations = crossing_relations(s, e)
    params = _affine_params(matrix)
    if params is not None and _is_prime(params[0]):
        return _count_affine(relations, s.n, *params)
    return _count_by_propagation(relations, s.n, matrix)


__all__ = [
    "T",
    "LaurentPoly",
    "ONE",
    "CrossingRelation",
    "crossing_relations",
    "alexander_matrix",
    "alexander_poly",
    "knot_determinant",
    "ColoringMatrix",
    "verify_coloring_matrix",
    "affine_matrix",
    "conjugation_matrix",
    "cycle_types",
    "is_involutory",
    "count_colorings",
]
