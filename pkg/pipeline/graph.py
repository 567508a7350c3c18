"""
LangGraph Workflow Definition for Knot Tabulation.

Three nodes run in sequence over one shared TabulationState:
1. enumerate: canonical drawable prime projections up to n crossings
2. merge: classes of projections connected by Reidemeister moves
3. classify: certificates, separations and the crossing-number histogram

The whole program needs two numbers, n and m; everything else is
configuration.
"""

import sys
from pathlib import Path
from typing import Optional

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from langgraph.graph import END, StateGraph

from config.settings import BUDGET_SECONDS, OUTPUTS_DIR, WORKERS
from pipeline.nodes import classify_node, enumerate_node, merge_node
from pipeline.state import (
    TabulationState,
    create_initial_state,
    get_state_summary,
    validate_input_state,
)
from tools.classification import KnotTable
from utils.errors import InvalidConfigError
from utils.logger import logger


# ==================== STATEGRAPH CONSTRUCTION ====================

def create_tabulation_graph():
    """
    Create the tabulation workflow.

    Workflow:
        enumerate -> merge -> classify -> END

    Returns:
        Compiled StateGraph ready for execution

    Example:
        >>> app = create_tabulation_graph()
        >>> final = app.invoke(create_initial_state(6, 3))
        >>> final["table"].counts()
        [1, 0, 0, 1, 1, 2, 3]
    """
    logger.debug("building tabulation StateGraph")
    graph = StateGraph(TabulationState)

    graph.add_node("enumerate", enumerate_node)
    graph.add_node("merge", merge_node)
    graph.add_node("classify", classify_node)

    graph.set_entry_point("enumerate")
    graph.add_edge("enumerate", "merge")
    graph.add_edge("merge", "classify")
    graph.add_edge("classify", END)

    return graph.compile()


# ==================== CONVENIENCE FUNCTIONS ====================

def run_tabulation_workflow(
    max_crossings: int,
    max_group: int,
    workers: int = WORKERS,
    budget_seconds: float = BUDGET_SECONDS,
    output_dir: Optional[Path] = None,
    resume: bool = False,
    progress: bool = False,
) -> TabulationState:
    """
    Run enumerate -> merge -> classify and return the final state.

    Raises:
        InvalidConfigError: invalid inputs
        ResourceBudgetExceededError: the budget ran out; cursor.json holds the resume point
        InvariantViolationError: a self-check failed
    """
    state = create_initial_state(
        max_crossings,
        max_group,
        workers=workers,
        budget_seconds=budget_seconds,
        output_dir=str(output_dir or OUTPUTS_DIR),
        resume=resume,
        progress=progress,
    )
    is_valid, errors = validate_input_state(state)
    if not is_valid:
        raise InvalidConfigError(errors)

    logger.info(f"\n{'='*70}")
    logger.info(f"🚀 STARTING TABULATION: n={max_crossings}, m={max_group}")
    logger.info(f"{'='*70}")

    app = create_tabulation_graph()
    final_state = app.invoke(state)

    logger.info(f"\n{'='*70}")
    logger.success("✅ TABULATION COMPLETE")
    logger.info(f"{'='*70}")
    logger.info("\n" + get_state_summary(final_state))
    return final_state


def tabulate(
    n: int,
    m: int,
    workers: int = WORKERS,
    budget_seconds: float = BUDGET_SECONDS,
    output_dir: Optional[Path] = None,
    resume: bool = False,
    progress: bool = False,
) -> KnotTable:
    """
    Tabulate prime knot types by crossing number.

    Args:
        n: Crossing bound of the projection pool
        m: Largest symmetric-group degree for coloring invariants
        workers: Process count for the parallel stages
        budget_seconds: Wall-clock budget (0 = unlimited)
        output_dir: Directory for cursor.json checkpoints
        resume: Continue an interrupted enumeration

    Returns:
        KnotTable whose histogram() has rows 0..n

    Example:
        >>> tabulate(6, 3).counts()
        [1, 0, 0, 1, 1, 2, 3]
    """
    final_state = run_tabulation_workflow(
        n, m,
        workers=workers,
        budget_seconds=budget_seconds,
        output_dir=output_dir,
        resume=resume,
        progress=progress,
    )
    return final_state["table"]


__all__ = [
    "create_tabulation_graph",
    "run_tabulation_workflow",
    "tabulate",
]
