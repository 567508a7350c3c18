"""Utility modules for the Knot Tabulator (logging, errors, worker pool)."""
