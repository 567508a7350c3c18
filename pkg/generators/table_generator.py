"""
Knot Table Output Generator.

Writes the files of a completed run into one directory:
1. table.csv / table.json - class count per crossing number 0..n
2. knots.txt - one certificate record per class
3. merges.log - one replayable move trace per merge
4. unresolved.txt - class pairs no computed invariant separates
5. manifest.json - run parameters and sha256 of every file above

Everything except manifest.json is a pure function of (n, m), so two runs
with the same parameters produce byte-identical files.
"""

import hashlib
import json
import sys
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional

import pandas as pd

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import (
    AFFINE_MODULI,
    CERTIFICATES_FILENAME,
    MANIFEST_FILENAME,
    MERGE_LOG_FILENAME,
    SUPPORTED_FORMATS,
    TABLE_FILENAME,
    TABLE_JSON_FILENAME,
    UNRESOLVED_FILENAME,
)
from tools.classification import KnotTable
from utils.logger import logger


def table_frame(table: KnotTable) -> pd.DataFrame:
    """Histogram as a DataFrame with columns crossings, classes."""
    return pd.DataFrame(table.histogram(), columns=["crossings", "classes"])


def _write_lines(path: Path, lines) -> None:
    text = "\n".join(lines)
    path.write_text(text + "\n" if text else "")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_table(table: KnotTable, output_dir: Path, fmt: str = "csv") -> Path:
    """Write table.csv or table.json and return its path."""
    if fmt not in SUPPORTED_FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; use one of {SUPPORTED_FORMATS}")
    frame = table_frame(table)
    if fmt == "csv":
        path = output_dir / TABLE_FILENAME
        frame.to_csv(path, index=False)
    else:
        path = output_dir / TABLE_JSON_FILENAME
        path.write_text(frame.to_json(orient="records", indent=2) + "\n")
    return path


def write_outputs(
    table: KnotTable,
    output_dir: Path,
    fmt: str = "csv",
    parameters: Optional[Dict] = None,
) -> Dict[str, Path]:
    """
    Write every output file of a run.

    Args:
        table: Result of tabulate
        output_dir: Target directory (created if missing)
        fmt: 'csv' or 'json' for the crossing-count table
        parameters: Extra run parameters recorded in the manifest

    Returns:
        Mapping of file role to written path

    Example:
        >>> paths = write_outputs(tabulate(6, 3), Path("outputs"))
        >>> paths["table"].read_text().splitlines()[0]
        'crossings,classes'
    """
    logger.info(f"📝 Writing outputs to {output_dir}")
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    paths = {"table": write_table(table, output_dir, fmt)}

    paths["knots"] = output_dir / CERTIFICATES_FILENAME
    _write_lines(paths["knots"], (cls.record for cls in table.classes))

    paths["merges"] = output_dir / MERGE_LOG_FILENAME
    _write_lines(paths["merges"], (record.text for record in table.merges))

    paths["unresolved"] = output_dir / UNRESOLVED_FILENAME
    _write_lines(paths["unresolved"], (f"{a.text} | {b.text}" for a, b in table.unresolved))

    manifest = {
        "parameters": {
            "max_crossings": table.max_crossings,
            "max_group": table.max_group,
            "affine_moduli": list(AFFINE_MODULI),
            "format": fmt,
            **(parameters or {}),
        },
        "classes": len(table.classes),
        "composite_classes": table.composite_count,
        "unresolved_pairs": len(table.unresolved),
        "histogram": dict(table.histogram()),
        "files": {path.name: _sha256(path) for path in paths.values()},
        "completed_at": datetime.now().isoformat(),
    }
    paths["manifest"] = output_dir / MANIFEST_FILENAME
    paths["manifest"].write_text(json.dumps(manifest, indent=2) + "\n")

    logger.success(f"✅ Wrote {len(paths)} files ({len(table.classes)} classes)")
    return paths


__all__ = ["table_frame", "write_table", "write_outputs"]
