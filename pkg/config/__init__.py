"""Configuration package for the Knot Tabulator."""
