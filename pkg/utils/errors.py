"""
Exception hierarchy for the Knot Tabulator.

Every error named by a module contract has one class here so callers (and the
CLI exit-code mapping) can catch by family instead of by message text.
"""

from typing import Any, Optional, Sequence


class KnotTabulatorError(Exception):
    """Base class for every error raised by this package."""


# ==================== Dowker Codes ====================

class InvalidCodeError(KnotTabulatorError, ValueError):
    """Raw input does not describe a Dowker set."""


class DuplicateLabelError(InvalidCodeError):
    def __init__(self, label: int):
        super().__init__(f"label {label} appears more than once")
        self.label = label


class LabelOutOfRangeError(InvalidCodeError):
    def __init__(self, label: int, two_n: int):
        super().__init__(f"label {label} is outside 1..{two_n}")
        self.label = label
        self.two_n = two_n


class ParseError(InvalidCodeError):
    """Text could not be parsed into a code, braid word or walk."""


class UndrawableError(KnotTabulatorError):
    """A drawable code was required but the code has no planar projection."""

    def __init__(self, code_text: str, witness: Any = None):
        super().__init__(f"code is undrawable: {code_text}")
        self.witness = witness


# ==================== Moves ====================

class SiteNotPresentError(KnotTabulatorError):
    """The requested move pattern does not occur at the given site."""


class IncoherentTriangleError(SiteNotPresentError):
    """Three pairs match the R3 pattern numerically but bound no triangular face."""


# ==================== Invariants ====================

class AxiomViolationError(KnotTabulatorError):
    def __init__(self, axiom: int, witness: Sequence[int]):
        super().__init__(f"coloring axiom {axiom} fails at {tuple(witness)}")
        self.axiom = axiom
        self.witness = tuple(witness)


class BadParametersError(KnotTabulatorError, ValueError):
    """Matrix family parameters violate their coprimality conditions."""


class EmptyClassError(KnotTabulatorError, ValueError):
    """The requested cycle type has no elements in the symmetric group."""


class SkeinDivisionByZeroError(KnotTabulatorError, ZeroDivisionError):
    """A skein coefficient that must be inverted is zero."""


# ==================== Notations ====================

class PatternMismatchError(KnotTabulatorError):
    """A braid rewrite rule does not match at the requested position."""


class CannotDestabilizeError(KnotTabulatorError):
    """The braid word does not end in a single occurrence of its top generator."""


class MoveBlockedError(KnotTabulatorError):
    """A lattice move fails its pattern or would occupy an occupied point."""


# ==================== Pipeline ====================

class InvalidConfigError(KnotTabulatorError, ValueError):
    def __init__(self, errors: Sequence[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


class ResourceBudgetExceededError(KnotTabulatorError):
    def __init__(self, stage: str, elapsed: float, cursor: Optional[Any] = None):
        super().__init__(f"budget exceeded during {stage} after {elapsed:.1f}s")
        self.stage = stage
        self.elapsed = elapsed
        self.cursor = cursor


class InvariantViolationError(KnotTabulatorError):
    """An internal self-check failed; results cannot be trusted."""


__all__ = [
    "KnotTabulatorError",
    "InvalidCodeError",
    "DuplicateLabelError",
    "LabelOutOfRangeError",
    "ParseError",
    "UndrawableError",
    "SiteNotPresentError",
    "IncoherentTriangleError",
    "AxiomViolationError",
    "BadParametersError",
    "EmptyClassError",
    "SkeinDivisionByZeroError",
    "PatternMismatchError",
    "CannotDestabilizeError",
    "MoveBlockedError",
    "InvalidConfigError",
    "ResourceBudgetExceededError",
    "InvariantViolationError",
]
