"""
Command-line front end of the Knot Tabulator.

Sub-commands:
    tabulate    enumerate, merge and classify; write the output files
    check       validity, drawability and connected-sum report for one code
    invariants  Alexander polynomial, coloring counts and skein values of one code
    braid       closure components and Markov/rewrite moves of a braid word
    saw         validity and local moves of a closed cubic-lattice walk

Exit codes: 0 success, 2 invalid input, 3 budget exceeded, 4 failed self-check.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import (
    AFFINE_MODULI,
    BUDGET_SECONDS,
    CURSOR_FILENAME,
    MAX_CROSSINGS,
    MAX_GROUP,
    OUTPUT_FORMAT,
    OUTPUTS_DIR,
    SUPPORTED_FORMATS,
    WORKERS,
    validate_config,
)
from generators.table_generator import write_outputs
from pipeline.graph import tabulate
from tools.dowker import (
    canonicalize,
    detect_connected_sum,
    dt_sequence,
    format_code,
    parse_code,
    prime_factors,
)
from tools.drawability import Undrawable, parity_filter, realize
from tools.invariants import affine_matrix, alexander_poly, conjugation_matrix, count_colorings, cycle_types
from tools.notations import (
    BraidWord,
    LatticeWalk,
    MarkovKind,
    RewriteRule,
    SawMove,
    braid_components,
    braid_is_connected_sum_candidate,
    braid_rewrite,
    markov_move,
    parse_int_sequence,
    saw_move,
    saw_validate,
)
from tools.skein import CONWAY, JONES, skein_eval
from utils.errors import (
    CannotDestabilizeError,
    InvalidCodeError,
    InvalidConfigError,
    InvariantViolationError,
    MoveBlockedError,
    PatternMismatchError,
    ResourceBudgetExceededError,
    UndrawableError,
)
from utils.logger import logger, set_console_level

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

SKEINS = {"conway": CONWAY, "jones": JONES}


# ==================== Run Configuration ====================

class RunConfig(BaseModel):
    """Validated parameters of a `tabulate` run."""

    n: int = Field(MAX_CROSSINGS, description="Max crossings of the projection pool")
    m: int = Field(MAX_GROUP, description="Max symmetric-group degree for colorings")
    out: Path = OUTPUTS_DIR
    format: str = OUTPUT_FORMAT
    workers: int = WORKERS
    budget_seconds: float = BUDGET_SECONDS
    resume: bool = False

    @field_validator("n")
    @classmethod
    def _n_non_negative(cls, v: int) -> int:
        if v < 0:
            raise ValueError(f"max crossings must be >= 0, got {v}")
        return v

    @field_validator("m")
    @classmethod
    def _m_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"max group degree must be >= 1, got {v}")
        return v

    @field_validator("format")
    @classmethod
    def _known_format(cls, v: str) -> str:
        if v not in SUPPORTED_FORMATS:
            raise ValueError(f"format must be one of {SUPPORTED_FORMATS}, got {v!r}")
        return v

    @field_validator("workers")
    @classmethod
    def _workers_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"workers must be >= 1, got {v}")
        return v

    @field_validator("budget_seconds")
    @classmethod
    def _budget_non_negative(cls, v: float) -> float:
        if v < 0:
            raise ValueError(f"budget must be >= 0 seconds, got {v}")
        return v

    @model_validator(mode="after")
    def _output_usable(self) -> "RunConfig":
        if self.out.exists() and not self.out.is_dir():
            raise ValueError(f"output path {self.out} is not a directory")
        if self.resume and not (self.out / CURSOR_FILENAME).exists():
            raise ValueError(f"--resume needs {self.out / CURSOR_FILENAME}")
        return self


def build_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed arguments; pydantic errors become InvalidConfigError."""
    values = {
        "n": args.max_crossings,
        "m": args.max_group,
        "out": args.out,
        "format": args.format,
        "workers": args.workers,
        "budget_seconds": args.budget_seconds,
        "resume": args.resume,
    }
    try:
        return RunConfig(**{k: v for k, v in values.items() if v is not None})
    except ValidationError as e:
        raise InvalidConfigError([err["msg"] for err in e.errors()]) from e


# ==================== Commands ====================

def cmd_tabulate(cfg: RunConfig, progress: bool = True) -> int:
    """Run the pipeline and write table, certificates, merge log and manifest."""
    cfg.out.mkdir(parents=True, exist_ok=True)
    table = tabulate(
        cfg.n, cfg.m,
        workers=cfg.workers,
        budget_seconds=cfg.budget_seconds,
        output_dir=cfg.out,
        resume=cfg.resume,
        progress=progress,
    )
    write_outputs(table, cfg.out, cfg.format, parameters={"workers": cfg.workers})
    for crossings, count in table.histogram():
        print(f"{crossings},{count}")
    return EXIT_OK


def check_report(text: str) -> List[str]:
    """Lines printed by `check`."""
    s = parse_code(text)
    lines = [f"code: {format_code(s)}"]
    dt = dt_sequence(s)
    lines.append(f"dt: {' '.join(str(x) for x in dt) if dt else '-'}")
    lines.append(f"parity: {'ok' if parity_filter(s) else 'FAILED'}")

    found = realize(s)
    if isinstance(found, Undrawable):
        lines.append(f"UNDRAWABLE: {found.describe()}")
        return lines
    lines.append(f"DRAWABLE: {found.face_count} faces")

    splits = detect_connected_sum(s)
    if s.n == 0:
        lines.append("unknot")
    elif splits:
        lines.append("composite: split at " + " ".join(str(p.k) for p in splits))
        factors = prime_factors(s)
        lines.append("factors: " + (" | ".join(format_code(canonicalize(f).code) for f in factors) or "unknot"))
    else:
        lines.append("prime")
    lines.append(f"canonical: {canonicalize(s).text}")
    return lines


def cmd_check(text: str) -> int:
    for line in check_report(text):
        print(line)
    return EXIT_OK


def invariants_report(
    text: str,
    moduli: Sequence[int] = (3,),
    group_degrees: Sequence[int] = (),
    skeins: Sequence[str] = (),
) -> str:
    """
    Certificate-style invariant line for one drawable code.

    Example:
        >>> invariants_report("1,4 3,6 5,2")
        'alexander: 1 -1 1 ; colorings(affine 3,2): 9'
    """
    s = parse_code(text)
    found = realize(s)
    if isinstance(found, Undrawable):
        raise UndrawableError(format_code(s), found.witness)

    parts = ["alexander: " + " ".join(str(c) for c in alexander_poly(s, found).coeffs)]
    matrices = [affine_matrix(q, q - 1) for q in moduli]
    matrices += [conjugation_matrix(p, ct) for p in group_degrees for ct in cycle_types(p)]
    parts += [f"colorings({matrix}): {count_colorings(s, matrix, found)}" for matrix in matrices]
    parts += [f"skein({name}): {skein_eval(found, SKEINS[name])}" for name in skeins]
    return " ; ".join(parts)


def cmd_invariants(text: str, moduli: Sequence[int], group_degrees: Sequence[int], skeins: Sequence[str]) -> int:
    print(invariants_report(text, moduli, group_degrees, skeins))
    return EXIT_OK


def cmd_braid(letters: str, strands: Optional[int], move: Optional[str], arg: Optional[str]) -> int:
    w = BraidWord.of(parse_int_sequence(letters), strands)
    if move in {r.value for r in RewriteRule}:
        w = braid_rewrite(w, RewriteRule(move), int(arg or 0))
    elif move == MarkovKind.CONJUGATE.value:
        w = markov_move(w, MarkovKind.CONJUGATE, parse_int_sequence(arg or ""))
    elif move == MarkovKind.STABILIZE.value:
        w = markov_move(w, MarkovKind.STABILIZE, int(arg or 1))
    elif move == MarkovKind.DESTABILIZE.value:
        w = markov_move(w, MarkovKind.DESTABILIZE)
    print(f"word: {w}")
    print(f"components: {braid_components(w)}")
    candidate = braid_is_connected_sum_candidate(w)
    print(f"connected-sum candidate: {candidate if candidate is not None else '-'}")
    return EXIT_OK


def cmd_saw(steps: str, move: Optional[str], index: Optional[int], direction: Optional[int]) -> int:
    walk = LatticeWalk.of(parse_int_sequence(steps))
    if move is not None:
        walk = saw_move(walk, SawMove(move), index or 1, direction)
        print(f"walk: {walk}")
    print(f"valid: {'yes' if saw_validate(walk) else 'no'}")
    return EXIT_OK


# ==================== Argument Parsing ====================

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="knot-tabulator",
        description="Tabulate prime knots from Dowker codes.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    p.add_argument("-q", "--quiet", action="store_true", help="Log warnings and errors only")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tabulate", help="Enumerate, merge and classify up to n crossings")
    t.add_argument("--max-crossings", type=int, default=None, help=f"n (default {MAX_CROSSINGS})")
    t.add_argument("--max-group", type=int, default=None, help=f"m (default {MAX_GROUP})")
    t.add_argument("--out", type=Path, default=None, help=f"Output directory (default {OUTPUTS_DIR})")
    t.add_argument("--format", choices=SUPPORTED_FORMATS, default=None)
    t.add_argument("--workers", type=int, default=None, help="Processes (falls back to KNOT_WORKERS)")
    t.add_argument("--budget-seconds", type=float, default=None, help="Wall-clock budget, 0 = unlimited")
    t.add_argument("--resume", action="store_true", help="Continue from cursor.json in --out")
    t.add_argument("--no-progress", action="store_true")

    c = sub.add_parser("check", help="Report on one code")
    c.add_argument("code", help="Pairs 'o,u o,u ...' or '<n> ; o,u ...'")

    i = sub.add_parser("invariants", help="Invariants of one drawable code")
    i.add_argument("code")
    i.add_argument("--q", type=int, nargs="*", default=list(AFFINE_MODULI[:1]), help="Fox coloring moduli")
    i.add_argument("--group-degree", type=int, nargs="*", default=[], help="Conjugation classes of S_p")
    i.add_argument("--skein", choices=sorted(SKEINS), nargs="*", default=[])

    b = sub.add_parser("braid", help="Braid word closure and moves")
    b.add_argument("letters", help="Signed generator indices, e.g. '1 1 1'")
    b.add_argument("--strands", type=int, default=None)
    b.add_argument("--move", choices=[r.value for r in RewriteRule] + [k.value for k in MarkovKind], default=None)
    b.add_argument("--arg", default=None, help="Rewrite position, stabilization sign or conjugating letters")

    s = sub.add_parser("saw", help="Closed cubic-lattice walk checks and moves")
    s.add_argument("steps", help="Signed axis indices 1..3, e.g. '1 2 -1 -2'")
    s.add_argument("--move", choices=[m.value for m in SawMove], default=None)
    s.add_argument("--index", type=int, default=None, help="1-based step index")
    s.add_argument("--direction", type=int, default=None, help="Inserted direction for II+")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_console_level("DEBUG")
    elif args.quiet:
        set_console_level("WARNING")

    try:
        if args.command == "tabulate":
            is_valid, errors = validate_config()
            if not is_valid:
                raise InvalidConfigError(errors)
            return cmd_tabulate(build_config(args), progress=not args.no_progress)
        if args.command == "check":
            return cmd_check(args.code)
        if args.command == "invariants":
            return cmd_invariants(args.code, args.q, args.group_degree, args.skein)
        if args.command == "braid":
            return cmd_braid(args.letters, args.strands, args.move, args.arg)
        return cmd_saw(args.steps, args.move, args.index, args.direction)
    except (
        InvalidCodeError,
        InvalidConfigError,
        UndrawableError,
        PatternMismatchError,
        CannotDestabilizeError,
        MoveBlockedError,
        ValueError,
    ) as e:
        logger.error(f"❌ {e}")
        return EXIT_INVALID
    except ResourceBudgetExceededError as e:
        logger.error(f"⏱️  {e}; rerun with --resume to continue")
        return EXIT_BUDGET
    except InvariantViolationError as e:
        logger.error(f"❌ self-check failed: {e}")
        return EXIT_INTERNAL


__all__ = [
    "RunConfig",
    "build_config",
    "cmd_tabulate",
    "check_report",
    "cmd_check",
    "invariants_report",
    "cmd_invariants",
    "cmd_braid",
    "cmd_saw",
    "build_parser",
    "main",
]
