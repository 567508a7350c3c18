#!/usr/bin/env python3
"""
Launch script for the Knot Tabulator command line.

    python run_cli.py tabulate --max-crossings 6 --max-group 3
    python run_cli.py check "1,4 3,6 5,2"
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from cli.app import main

if __name__ == "__main__":
    sys.exit(main())
