"""
Tools package: Dowker codes, drawability, moves, invariants, notations
and the three tabulation stages (enumeration, merging, classification).
"""

from .dowker import UNKNOT, CanonicalCode, DowkerSet, canonicalize, format_code, parse_code, validate_set
from .drawability import Embedding, Undrawable, is_drawable, realize
from .invariants import alexander_poly, count_colorings
from .enumeration import enumerate_projections
from .merging import merge_equivalences
from .classification import KnotTable, classify

__all__ = [
    "UNKNOT",
    "CanonicalCode",
    "DowkerSet",
    "canonicalize",
    "format_code",
    "parse_code",
    "validate_set",
    "Embedding",
    "Undrawable",
    "is_drawable",
    "realize",
    "alexander_poly",
    "count_colorings",
    "enumerate_projections",
    "merge_equivalences",
    "KnotTable",
    "classify",
]
