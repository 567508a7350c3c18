"""Test suite for the Knot Tabulator."""
