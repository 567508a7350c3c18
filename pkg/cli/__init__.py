"""
Command-line interface (argparse sub-commands tabulate, check, invariants, braid, saw).
"""

from .app import RunConfig, build_parser, main

__all__ = ['RunConfig', 'build_parser', 'main']
