"""
Enumeration Node for the Tabulation Workflow.

Generates the pool of canonical drawable prime projections with at most n
crossings. The enumeration cursor is checkpointed to cursor.json so an
interrupted run can be resumed with the same output.
"""

import sys
import time
from pathlib import Path
from typing import Any, Dict, List

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from config.settings import CHECKPOINT_EVERY, CURSOR_FILENAME
from pipeline.state import TabulationState, budget_exhausted
from tools.dowker import CanonicalCode
from tools.enumeration import (
    EnumerationCursor,
    ProjectionEnumerator,
    read_cursor_file,
    write_cursor_file,
)
from utils.errors import InvalidConfigError
from utils.logger import logger


def cursor_path(state: TabulationState) -> Path:
    return Path(state["output_dir"]) / CURSOR_FILENAME


def enumerate_node(state: TabulationState) -> Dict[str, Any]:
    """
    Enumeration Node - build the pool of canonical projections.

    Args:
        state: TabulationState with the run inputs

    Returns:
        Dict with state updates: pool, current_step, stage_durations

    Raises:
        InvalidConfigError: resume requested for a different crossing bound
        ResourceBudgetExceededError: the deadline passed; cursor.json holds the resume point
    """
    n = state["max_crossings"]
    logger.info(f"\n{'='*70}")
    logger.info(f"🔢 ENUMERATION NODE: projections with up to {n} crossings")
    logger.info(f"{'='*70}\n")

    started = time.time()
    path = cursor_path(state)
    cursor, found = None, None

    if state.get("resume"):
        saved_n, cursor, found = read_cursor_file(path)
        if saved_n != n:
            raise InvalidConfigError([f"cursor.json was written for n={saved_n}, not n={n}"])
        logger.info(f"⏩ Resuming at k={cursor.k}, permutation {cursor.perm_rank} with {len(found)} codes")

    def checkpoint(at: EnumerationCursor, codes: List[CanonicalCode]) -> None:
        write_cursor_file(path, n, at, codes)
        logger.debug(f"checkpoint k={at.k} rank={at.perm_rank} ({len(codes)} codes)")

    enumerator = ProjectionEnumerator(
        n,
        workers=state.get("workers", 1),
        checkpoint_every=CHECKPOINT_EVERY,
        on_checkpoint=checkpoint,
        should_stop=lambda: budget_exhausted(state),
        progress=state.get("progress", False),
    )
    pool = enumerator.run(cursor, found)

    by_k: Dict[int, int] = {}
    for code in pool:
        by_k[code.n] = by_k.get(code.n, 0) + 1
    for k in sorted(by_k):
        logger.info(f"   k={k}: {by_k[k]} canonical projections")

    elapsed = time.time() - started
    logger.success(f"✅ Enumerated {len(pool)} projections in {elapsed:.1f}s")

    durations = dict(state.get("stage_durations", {}))
    durations["enumeration"] = elapsed
    return {
        "pool": pool,
        "current_step": "enumeration",
        "stage_durations": durations,
    }


__all__ = ["enumerate_node", "cursor_path"]
