"""
Classification Node for the Tabulation Workflow.

Certifies every prime class and separates classes that share an Alexander
polynomial with coloring invariants up to S_m. Every separation is
recomputed once before the table is accepted.
"""

import sys
import time
from pathlib import Path
from typing import Any, Dict

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config.settings import AFFINE_MODULI
from pipeline.state import TabulationState, budget_exhausted
from tools.classification import KnotTable, classify
from tools.invariants import alexander_poly
from utils.errors import InvariantViolationError, ResourceBudgetExceededError
from utils.logger import logger


def _check_table(table: KnotTable) -> None:
    """Alexander polynomials in certificates must match a fresh computation."""
    for cls in table.classes:
        fresh = alexander_poly(cls.representative.code)
        if fresh != cls.certificate.alexander:
            raise InvariantViolationError(
                f"alexander of {cls.representative.text} recomputed as {fresh}, "
                f"certificate says {cls.certificate.alexander}"
            )
    for sep in table.separations:
        if sep.first_value == sep.second_value:
            raise InvariantViolationError(f"separation by {sep.invariant} has equal values")


def classify_node(state: TabulationState) -> Dict[str, Any]:
    """
    Classification Node - build the knot table.

    Returns:
        Dict with state updates: table, warnings, current_step, stage_durations

    Raises:
        ResourceBudgetExceededError: the deadline passed before classification started
        InvariantViolationError: a certificate fails recomputation
    """
    partition = state["partition"]
    m = state["max_group"]
    logger.info(f"\n{'='*70}")
    logger.info(f"🏷️  CLASSIFICATION NODE: {len(partition.prime_classes)} prime classes, m={m}")
    logger.info(f"{'='*70}\n")

    if budget_exhausted(state):
        raise ResourceBudgetExceededError("classify", time.time() - state["started_at"])

    started = time.time()
    table = classify(
        partition,
        m,
        affine_moduli=AFFINE_MODULI,
        workers=state.get("workers", 1),
        progress=state.get("progress", False),
    )
    _check_table(table)

    warnings = list(state.get("warnings", []))
    for a, b in table.unresolved:
        warnings.append(f"UNRESOLVED: {a.text} vs {b.text}")

    for crossings, count in table.histogram():
        logger.info(f"   {crossings:>2} crossings: {count}")
    elapsed = time.time() - started
    logger.success(
        f"✅ {len(table.classes)} knot types, {len(table.separations)} coloring separations, "
        f"{len(table.unresolved)} unresolved in {elapsed:.1f}s"
    )

    durations = dict(state.get("stage_durations", {}))
    durations["classification"] = elapsed
    return {
        "table": table,
        "warnings": warnings,
        "current_step": "classification",
        "stage_durations": durations,
    }


__all__ = ["classify_node"]
