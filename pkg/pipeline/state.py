"""
State Schema for the Tabulation Workflow.

TabulationState is the single source of truth of one run. Every node reads
what it needs from it and returns a dict of updates that langgraph merges in.
"""

import time
from typing import Dict, List, Optional, TypedDict

from tools.classification import KnotTable
from tools.dowker import CanonicalCode
from tools.merging import Partition


class TabulationState(TypedDict, total=False):
    """
    Shared state of the enumerate -> merge -> classify workflow.

    Attributes:
        === INPUT ===
        max_crossings (int): n, the crossing bound of the pool
        max_group (int): m, the largest symmetric-group degree for colorings
        workers (int): Process count for the parallel stages
        budget_seconds (float): Wall-clock budget for the whole run (0 = unlimited)
        output_dir (str): Where cursor.json is checkpointed
        resume (bool): Continue enumeration from output_dir/cursor.json
        progress (bool): Show tqdm progress bars

        === STAGE OUTPUTS ===
        pool (List[CanonicalCode]): Enumerated canonical projections, unknot first
        partition (Partition): Classes after merging
        table (KnotTable): Certified classes and histogram

        === METADATA ===
        current_step (str): 'start', 'enumeration', 'merging', 'classification'
        deadline (float): time.time() value after which stages abort, or None
        started_at (float): time.time() at workflow start
        stage_durations (Dict[str, float]): Seconds spent per stage
        errors (List[str]): Messages of failed self-checks
        warnings (List[str]): Non-fatal findings (e.g. unresolved pairs)
    """

    # === INPUT ===
    max_crossings: int
    max_group: int
    workers: int
    budget_seconds: float
    output_dir: str
    resume: bool
    progress: bool

    # === STAGE OUTPUTS ===
    pool: Optional[List[CanonicalCode]]
    partition: Optional[Partition]
    table: Optional[KnotTable]

    # === METADATA ===
    current_step: str
    deadline: Optional[float]
    started_at: float
    stage_durations: Dict[str, float]
    errors: List[str]
    warnings: List[str]


# ==================== STATE FACTORY FUNCTIONS ====================

def create_initial_state(
    max_crossings: int,
    max_group: int,
    workers: int = 1,
    budget_seconds: float = 0.0,
    output_dir: str = "outputs",
    resume: bool = False,
    progress: bool = False,
) -> TabulationState:
    """
    Create the initial state of a tabulation run.

    Example:
        >>> state = create_initial_state(6, 3)
        >>> app = create_tabulation_graph()
        >>> table = app.invoke(state)["table"]
    """
    started = time.time()
    return TabulationState(
        max_crossings=max_crossings,
        max_group=max_group,
        workers=workers,
        budget_seconds=budget_seconds,
        output_dir=str(output_dir),
        resume=resume,
        progress=progress,
        pool=None,
        partition=None,
        table=None,
        current_step="start",
        deadline=started + budget_seconds if budget_seconds else None,
        started_at=started,
        stage_durations={},
        errors=[],
        warnings=[],
    )


# ==================== STATE VALIDATION FUNCTIONS ====================

def validate_input_state(state: TabulationState) -> tuple[bool, List[str]]:
    """
    Validate the input fields of a state.

    Returns:
        Tuple of (is_valid, error_messages)
    """
    errors = []
    if state.get("max_crossings", -1) < 0:
        errors.append(f"max_crossings must be >= 0, got {state.get('max_crossings')}")
    if state.get("max_group", 0) < 1:
        errors.append(f"max_group must be >= 1, got {state.get('max_group')}")
    if state.get("workers", 1) < 1:
        errors.append(f"workers must be >= 1, got {state.get('workers')}")
    if state.get("budget_seconds", 0) < 0:
        errors.append(f"budget_seconds must be >= 0, got {state.get('budget_seconds')}")
    return len(errors) == 0, errors


def budget_exhausted(state: TabulationState) -> bool:
    deadline = state.get("deadline")
    return deadline is not None and time.time() >= deadline


def get_state_summary(state: TabulationState) -> str:
    """One-screen summary of a (possibly partial) run."""
    lines = [
        f"Run: n={state.get('max_crossings')} m={state.get('max_group')} "
        f"workers={state.get('workers')}",
        f"Step: {state.get('current_step')}",
    ]
    if state.get("pool") is not None:
        lines.append(f"Pool: {len(state['pool'])} canonical projections")
    if state.get("partition") is not None:
        partition = state["partition"]
        lines.append(f"Classes: {len(partition.classes)} ({partition.composite_count} composite)")
    if state.get("table") is not None:
        counts = ", ".join(str(c) for c in state["table"].counts())
        lines.append(f"Table: {counts}")
    for stage, seconds in state.get("stage_durations", {}).items():
        lines.append(f"  {stage}: {seconds:.1f}s")
    for message in state.get("warnings", []):
        lines.append(f"  ⚠️  {message}")
    for message in state.get("errors", []):
        lines.append(f"  ❌ {message}")
    return "\n".join(lines)


__all__ = [
    "TabulationState",
    "create_initial_state",
    "validate_input_state",
    "budget_exhausted",
    "get_state_summary",
]
