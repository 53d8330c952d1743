"""Command-line front end.

Subcommands:
    realize   - realize a framework file and write the square
    verify    - check a square against a framework
    classify  - print the families a framework belongs to
    reduce    - write the reduced framework F/k
    refine    - write the refined framework of a tree structure
    generate  - write a seeded framework of a family
    census    - enumerate and realize every rectangular framework of order n
    render    - draw a framework (and optionally a square) as PNG

Squares, frameworks and census tables go to --output or standard output;
diagnostics go to standard error. Exit codes are listed in ExitStatus.
"""

import argparse
import enum
import logging
import sys

from pydantic import ValidationError

from .census import CENSUS_METHODS, run_census
from .config import load_config
from .database import CensusDatabase
from .errors import (
    BudgetExceeded,
    ClassificationMismatch,
    ConstructionError,
    DimensionMismatch,
    FrameworkError,
    GenerationError,
    NoMethodApplicable,
    OutlineError,
    Unrealizable,
)
from .framework import FAMILIES, classify, generate, parse_partition, reduce, refine
from .outline import format_square, parse_square
from .realize import METHODS, realize
from .verify import SearchBudget, verify_realization


class ExitStatus(enum.IntEnum):
    OK = 0
    FAILURE = 1
    INPUT_ERROR = 2
    UNSUPPORTED = 3


def _read(path: str) -> str:
    with open(path, "r") as f:
        return f.read()


def _write(text: str, path: str = None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _budget(args, config) -> SearchBudget:
    settings = config["brute_force"]
    budget = getattr(args, "budget", None)
    return SearchBudget(
        max_assignments=budget if budget is not None else settings["max_assignments"],
        max_order=settings["max_order"],
        time_limit=settings["time_limit"],
    )


def cmd_realize(args, config) -> int:
    partition = parse_partition(_read(args.input))
    result = realize(partition, args.method, _budget(args, config))
    # Re-check right before writing
    report = verify_realization(result.square, partition)
    if not report.ok:
        logging.error(f"Realization failed verification:\n{report.summary()}")
        return ExitStatus.FAILURE
    _write(format_square(result.square), args.output)
    print(f"method: {result.method}", file=sys.stderr)
    return ExitStatus.OK


def cmd_verify(args, config) -> int:
    partition = parse_partition(_read(args.framework))
    square = parse_square(_read(args.square))
    report = verify_realization(square, partition)
    if report.ok:
        print("ok", file=sys.stderr)
        return ExitStatus.OK
    print(report.summary(limit=args.limit), file=sys.stderr)
    return ExitStatus.FAILURE


def cmd_classify(args, config) -> int:
    label = classify(parse_partition(_read(args.input)))
    _write(f"{label}\n", args.output)
    return ExitStatus.OK


def cmd_reduce(args, config) -> int:
    reduced = reduce(parse_partition(_read(args.input)), args.k)
    _write(reduced.to_text(), args.output)
    return ExitStatus.OK


def cmd_refine(args, config) -> int:
    refined = refine(parse_partition(_read(args.input)))
    _write(refined.to_text(), args.output)
    return ExitStatus.OK


def cmd_generate(args, config) -> int:
    seed = config["seed"] if args.seed is None else args.seed
    if args.family in ("uniform", "mixed"):
        if args.s is None or args.t is None:
            raise GenerationError(f"family {args.family} needs --s and --t")
        params = {"s": args.s, "t": args.t}
    else:
        if args.n is None:
            raise GenerationError(f"family {args.family} needs --n")
        params = {"n": args.n}
    partition = generate(args.family, seed=seed, **params)
    _write(partition.to_text(), args.output)
    return ExitStatus.OK


def cmd_census(args, config) -> int:
    settings = config["census"]
    workers = args.workers or settings["workers"]
    db_path = args.db or settings["database_file"]
    progress = settings["progress"] and not args.no_progress
    options = dict(
        method=args.method,
        budget=_budget(args, config),
        workers=workers,
        progress=progress,
        cap=settings["max_order"],
        allow_large=args.allow_large,
    )
    if db_path:
        with CensusDatabase(db_path) as db:
            summary = run_census(args.n, database=db, **options)
    else:
        summary = run_census(args.n, **options)

    _write(summary.to_tsv(), args.output)
    print(f"all realizable: {'yes' if summary.all_realizable else 'no'}", file=sys.stderr)
    for record in summary.records:
        if record.status != "realized":
            print(f"{record.status}: {record.error or ''}\n{record.layout}", file=sys.stderr)
    if summary.all_realizable:
        return ExitStatus.OK
    if summary.count("budget_exceeded") and not (
        summary.count("error") or summary.count("unrealizable")
    ):
        return ExitStatus.UNSUPPORTED
    return ExitStatus.FAILURE


def cmd_render(args, config) -> int:
    from .plotting import render_framework

    partition = parse_partition(_read(args.framework))
    square = parse_square(_read(args.square)) if args.square else None
    buf = render_framework(partition, square)
    with open(args.output, "wb") as f:
        f.write(buf.getvalue())
    return ExitStatus.OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gerechte",
        description="Realize gerechte frameworks with rectangular regions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s realize --input frameworks/mixed12.txt --output square.txt
  %(prog)s verify --framework frameworks/mixed12.txt --square square.txt
  %(prog)s generate --class tree --n 24 --seed 3
  %(prog)s census --n 4
        """,
    )
    parser.add_argument("--config", default="config.yaml", help="Path to the YAML config")
    parser.add_argument("--log-level", help="Logging level (default: from config, INFO)")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("realize", help="Realize a framework")
    p.add_argument("--input", required=True, help="Framework file")
    p.add_argument("--method", choices=METHODS, default="auto", help="Construction (default: auto)")
    p.add_argument("--output", help="Square file (default: standard output)")
    p.add_argument("--seed", type=int, help="Seed (realizations are deterministic)")
    p.add_argument("--budget", type=int, help="Brute-force assignment limit")
    p.set_defaults(handler=cmd_realize)

    p = commands.add_parser("verify", help="Check a square against a framework")
    p.add_argument("--framework", required=True, help="Framework file")
    p.add_argument("--square", required=True, help="Square file")
    p.add_argument("--limit", type=int, default=5, help="Violations to print (default: 5)")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("classify", help="Print the families of a framework")
    p.add_argument("--input", required=True, help="Framework file")
    p.add_argument("--output", help="Output file (default: standard output)")
    p.set_defaults(handler=cmd_classify)

    p = commands.add_parser("reduce", help="Write the reduced framework F/k")
    p.add_argument("--input", required=True, help="Framework file")
    p.add_argument("--k", type=int, required=True, help="Reduction factor")
    p.add_argument("--output", help="Output file (default: standard output)")
    p.set_defaults(handler=cmd_reduce)

    p = commands.add_parser("refine", help="Write the refined framework of a tree structure")
    p.add_argument("--input", required=True, help="Framework file")
    p.add_argument("--output", help="Output file (default: standard output)")
    p.set_defaults(handler=cmd_refine)

    p = commands.add_parser("generate", help="Write a seeded framework")
    p.add_argument("--class", dest="family", choices=FAMILIES, required=True, help="Family")
    p.add_argument("--s", type=int, help="Region height (uniform, mixed)")
    p.add_argument("--t", type=int, help="Region width (uniform, mixed)")
    p.add_argument("--n", type=int, help="Order (columns, tree)")
    p.add_argument("--seed", type=int, help="Seed (default: from config, 0)")
    p.add_argument("--output", help="Output file (default: standard output)")
    p.set_defaults(handler=cmd_generate)

    p = commands.add_parser("census", help="Realize every rectangular framework of order n")
    p.add_argument("--n", type=int, required=True, help="Order")
    p.add_argument("--method", choices=CENSUS_METHODS, default="brute", help="(default: brute)")
    p.add_argument("--workers", type=int, help="Worker processes (default: from config, 1)")
    p.add_argument("--db", help="SQLite file to store and resume results")
    p.add_argument("--budget", type=int, help="Brute-force assignment limit")
    p.add_argument("--allow-large", action="store_true", help="Lift the order cap")
    p.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    p.add_argument("--output", help="Summary TSV file (default: standard output)")
    p.set_defaults(handler=cmd_census)

    p = commands.add_parser("render", help="Draw a framework as PNG")
    p.add_argument("--framework", required=True, help="Framework file")
    p.add_argument("--square", help="Square file whose symbols are drawn")
    p.add_argument("--output", required=True, help="PNG file")
    p.set_defaults(handler=cmd_render)

    return parser


def main(argv=None) -> int:
    """Run the command line and return its exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    config = load_config(args.config)
    level = (args.log_level or config["log_level"]).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), stream=sys.stderr, force=True)

    try:
        return int(args.handler(args, config))
    except (FrameworkError, DimensionMismatch, OutlineError, OSError) as e:
        logging.error(f"Input error: {e}")
        return ExitStatus.INPUT_ERROR
    except ValidationError as e:
        logging.error(f"Invalid settings: {e}")
        return ExitStatus.INPUT_ERROR
    except (ClassificationMismatch, NoMethodApplicable, BudgetExceeded, GenerationError) as e:
        logging.error(f"Unsupported: {e}")
        return ExitStatus.UNSUPPORTED
    except (ConstructionError, Unrealizable) as e:
        logging.error(f"Realization failed: {e}")
        if getattr(e, "framework", None):
            logging.error(f"Offending framework:\n{e.framework}")
        return ExitStatus.FAILURE
