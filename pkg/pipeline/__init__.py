"""
Tabulation workflow: a langgraph StateGraph of enumerate -> merge -> classify.
"""

from .graph import create_tabulation_graph, run_tabulation_workflow, tabulate
from .state import TabulationState, create_initial_state, get_state_summary

__all__ = [
    "TabulationState",
    "create_initial_state",
    "get_state_summary",
    "create_tabulation_graph",
    "run_tabulation_workflow",
    "tabulate",
]
