"""
Configuration settings for the Knot Tabulator.

This module loads environment variables and provides configuration
for the entire application: enumeration bounds, worker counts,
resource budgets and output locations.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# ==================== Tabulation Configuration ====================

# The two numbers the whole pipeline needs
MAX_CROSSINGS = int(os.getenv("KNOT_MAX_CROSSINGS", "6"))
MAX_GROUP = int(os.getenv("KNOT_MAX_GROUP", "3"))

# Affine coloring moduli recorded in every certificate (t = q - 1, Fox colorings)
AFFINE_MODULI = [
    int(q) for q in os.getenv("KNOT_AFFINE_MODULI", "3,5,7").split(",") if q.strip()
]

# ==================== System Configuration ====================

# Parallelism (the CLI flag --workers takes precedence)
WORKERS = int(os.getenv("KNOT_WORKERS", "1"))

# Wall-clock budget for a whole run in seconds (0 = unlimited)
BUDGET_SECONDS = float(os.getenv("KNOT_BUDGET_SECONDS", "0"))

# Cursor checkpoint interval, in enumerated (permutation, word) assignments
CHECKPOINT_EVERY = int(os.getenv("KNOT_CHECKPOINT_EVERY", "1000000"))

# Output format for the crossing-count table
OUTPUT_FORMAT = os.getenv("KNOT_OUTPUT_FORMAT", "csv")

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# ==================== Directory Paths ====================

OUTPUTS_DIR = Path(os.getenv("KNOT_OUTPUTS_DIR", str(PROJECT_ROOT / "outputs")))

# ==================== Output File Names ====================

TABLE_FILENAME = "table.csv"
TABLE_JSON_FILENAME = "table.json"
CERTIFICATES_FILENAME = "knots.txt"
MERGE_LOG_FILENAME = "merges.log"
UNRESOLVED_FILENAME = "unresolved.txt"
MANIFEST_FILENAME = "manifest.json"
CURSOR_FILENAME = "cursor.json"

SUPPORTED_FORMATS = ("csv", "json")

# ==================== Validation ====================

def validate_config() -> tuple[bool, list[str]]:
    """
    Validate that the environment-derived configuration is usable.

    Returns:
        tuple: (is_valid, list of errors)
    """
    errors = []

    if MAX_CROSSINGS < 0:
        errors.append(f"Invalid KNOT_MAX_CROSSINGS: {MAX_CROSSINGS}. Must be >= 0")

    if MAX_GROUP < 1:
        errors.append(f"Invalid KNOT_MAX_GROUP: {MAX_GROUP}. Must be >= 1")

    if WORKERS < 1:
        errors.append(f"Invalid KNOT_WORKERS: {WORKERS}. Must be >= 1")

    if BUDGET_SECONDS < 0:
        errors.append(f"Invalid KNOT_BUDGET_SECONDS: {BUDGET_SECONDS}. Use 0 for unlimited")

    if CHECKPOINT_EVERY < 1:
        errors.append(f"Invalid KNOT_CHECKPOINT_EVERY: {CHECKPOINT_EVERY}")

    if OUTPUT_FORMAT not in SUPPORTED_FORMATS:
        errors.append(f"Invalid KNOT_OUTPUT_FORMAT: {OUTPUT_FORMAT}. Must be 'csv' or 'json'")

    for q in AFFINE_MODULI:
        if q < 3 or q % 2 == 0:
            errors.append(f"Invalid affine modulus {q}: Fox colorings need an odd q >= 3")

    return len(errors) == 0, errors


# ==================== Display Configuration ====================

def print_config():
    """Print current configuration (for debugging)."""
    print("=" * 60)
    print("KNOT TABULATOR - CONFIGURATION")
    print("=" * 60)
    print(f"\n🪢 Tabulation:")
    print(f"   Max crossings (n): {MAX_CROSSINGS}")
    print(f"   Max group degree (m): {MAX_GROUP}")
    print(f"   Affine moduli: {', '.join(str(q) for q in AFFINE_MODULI)}")

    print(f"\n⚙️  System:")
    print(f"   Workers: {WORKERS}")
    print(f"   Budget: {'unlimited' if not BUDGET_SECONDS else f'{BUDGET_SECONDS:.0f}s'}")
    print(f"   Checkpoint every: {CHECKPOINT_EVERY:,} assignments")
    print(f"   Log level: {LOG_LEVEL}")

    print(f"\n📁 Directories:")
    print(f"   Project Root: {PROJECT_ROOT}")
    print(f"   Outputs: {OUTPUTS_DIR}")

    is_valid, errors = validate_config()
    print(f"\n✅ Configuration Status:")
    if is_valid:
        print("   ✅ All configuration valid!")
    else:
        print("   ❌ Configuration errors:")
        for error in errors:
            print(f"      - {error}")
    print("=" * 60)


if __name__ == "__main__":
    print_config()
