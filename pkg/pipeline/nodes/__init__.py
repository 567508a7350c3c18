"""
Node Functions for the Tabulation Workflow.

1. enumeration.py - canonical drawable prime projections up to n crossings
2. merging.py - move-connected classes of the pool
3. classification.py - certificates and the knot table

Each node takes TabulationState and returns a dict of state updates.
"""

from .enumeration import enumerate_node
from .merging import merge_node
from .classification import classify_node

__all__ = ['enumerate_node', 'merge_node', 'classify_node']
