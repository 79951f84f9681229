import argparse
from typing import List, Optional, Tuple

import structlog
from pydantic import ValidationError

from src.models.schemas import SWEEP_COLUMNS
from src.services.corpus_service import QUICK_SUITES, SUITES, corpus_service, load_records
from src.services.sweep_service import SWEEPS, sweep_service
from src.utils.errors import InvalidArgs
from src.utils.output import emit

logger = structlog.get_logger()


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser):
    verify = subparsers.add_parser("verify-examples", parents=[parent],
                                   help="Rebuild every worked example and run the property suites")
    verify.add_argument("--filter", help="only records whose id contains this text")
    verify.add_argument("--suites", default="quick",
                        help="quick, full, none, or a comma list of: " + ", ".join(SUITES))
    verify.add_argument("--corpus", help="JSON file with extra example records")
    verify.set_defaults(handler=verify_command)

    sweep = subparsers.add_parser("sweep", parents=[parent], help="Tabulate codes over an open parameter range")
    sweep.add_argument("id", choices=list(SWEEPS))
    sweep.add_argument("--m", help="m range as lo..hi or a single m")
    sweep.add_argument("--q", help="comma list of base fields")
    sweep.add_argument("--differential", action="store_true")
    distance = sweep.add_mutually_exclusive_group()
    distance.add_argument("--distance", dest="distance", action="store_true", default=None)
    distance.add_argument("--no-distance", dest="distance", action="store_false")
    sweep.set_defaults(handler=sweep_command, format_default="csv")


def parse_suites(text: Optional[str]) -> List[str]:
    if text in (None, "quick"):
        return list(QUICK_SUITES)
    if text == "full":
        return list(SUITES)
    if text == "none":
        return []
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise InvalidArgs(f"Unknown suites: {', '.join(unknown)}", details={"suites": unknown})
    return names


def parse_m_range(text: Optional[str]) -> Optional[Tuple[int, int]]:
    if text is None:
        return None
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise InvalidArgs(f"Cannot read m range '{text}'", details={"m": text})


def verify_command(args: argparse.Namespace) -> int:
    """
    Verify the embedded corpus

    Exits 0 when the run is green and 1 otherwise.
    """
    extra = None
    if args.corpus:
        try:
            extra = load_records(args.corpus)
        except (OSError, ValueError, ValidationError) as e:
            raise InvalidArgs(f"Cannot load corpus file {args.corpus}", details={"error": str(e)})
    report = corpus_service.run(pattern=args.filter, suites=parse_suites(args.suites), extra=extra)
    if args.format == "csv":
        rows = [
            {"id": r.id, "passed": r.passed, "exploratory": r.exploratory,
             "failed": [name for name, ok in r.checks.items() if not ok],
             "duration_ms": r.duration_ms}
            for r in report.examples
        ]
        rows += [
            {"id": f"suite:{p.name}", "passed": p.passed, "exploratory": False,
             "failed": p.failures, "duration_ms": p.duration_ms}
            for p in report.properties
        ]
        emit(rows, "csv", columns=["id", "passed", "exploratory", "failed", "duration_ms"])
    else:
        emit(report, "json")
    return 0 if report.green else 1


def sweep_command(args: argparse.Namespace) -> int:
    q_values = None
    if args.q:
        try:
            q_values = [int(part) for part in args.q.split(",") if part.strip()]
        except ValueError:
            raise InvalidArgs(f"Cannot read q list '{args.q}'", details={"q": args.q})
    rows = sweep_service.run(args.id, m_range=parse_m_range(args.m), q_values=q_values,
                             differential=args.differential, distance=args.distance)
    emit(rows, args.format, columns=SWEEP_COLUMNS if args.format == "csv" else None)
    return 0
