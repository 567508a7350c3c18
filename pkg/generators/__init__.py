"""
Output Generators Package.

table_generator.py writes the crossing-count table, certificates, merge
log, unresolved pairs and the run manifest.
"""

from .table_generator import table_frame, write_outputs, write_table

__all__ = ['table_frame', 'write_outputs', 'write_table']
