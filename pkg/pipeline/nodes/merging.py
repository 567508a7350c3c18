"""
Merging Node for the Tabulation Workflow.

Applies every Reidemeister move to every pool code and partitions the pool
into classes. Each recorded merge is replayed as a self-check.
"""

import sys
import time
from pathlib import Path
from typing import Any, Dict

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from pipeline.state import TabulationState, budget_exhausted
from tools.merging import merge_equivalences, replay_record
from utils.errors import InvariantViolationError, ResourceBudgetExceededError
from utils.logger import logger


def merge_node(state: TabulationState) -> Dict[str, Any]:
    """
    Merging Node - identify pool codes connected by moves within n crossings.

    Returns:
        Dict with state updates: partition, current_step, stage_durations

    Raises:
        ResourceBudgetExceededError: the deadline passed before merging started
        InvariantViolationError: a merge record does not replay
    """
    logger.info(f"\n{'='*70}")
    logger.info(f"🔗 MERGING NODE: {len(state['pool'])} projections")
    logger.info(f"{'='*70}\n")

    if budget_exhausted(state):
        raise ResourceBudgetExceededError("merge", time.time() - state["started_at"])

    started = time.time()
    partition = merge_equivalences(
        state["pool"],
        state["max_crossings"],
        workers=state.get("workers", 1),
        progress=state.get("progress", False),
    )

    logger.info("🧪 Replaying merge records...")
    for record in partition.records:
        if not replay_record(record):
            logger.error(f"❌ merge record does not replay: {record.text}")
            raise InvariantViolationError(f"merge record does not replay: {record.text}")

    elapsed = time.time() - started
    logger.success(
        f"✅ {len(partition.classes)} classes ({partition.composite_count} composite) "
        f"from {len(partition.records)} merges in {elapsed:.1f}s"
    )

    durations = dict(state.get("stage_durations", {}))
    durations["merging"] = elapsed
    return {
        "partition": partition,
        "current_step": "merging",
        "stage_durations": durations,
    }


__all__ = ["merge_node"]
