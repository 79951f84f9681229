import argparse
import logging
import sys
from typing import List, Optional

import structlog

from src.config.settings import get_settings
from src.routes import algebra, codes, corpus
from src.utils.errors import CodeConstructionError
from src.utils.output import emit_error


def configure_logging(level: str):
    """Structured JSON logs on stderr; stdout carries the results"""
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer()
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=None,
                        help=f"output format (default {settings.OUTPUT_FORMAT}, sweeps default to csv)")
    common.add_argument("--log-level", default=None, help="override LOG_LEVEL")

    parser = argparse.ArgumentParser(
        prog="cyclic-codes",
        description="Cyclic codes from APN and planar functions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    algebra.register(subparsers, common)
    codes.register(subparsers, common)
    corpus.register(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    parser = build_parser()
    args = parser.parse_args(argv)

    level = "DEBUG" if settings.DEBUG else (args.log_level or settings.LOG_LEVEL).upper()
    configure_logging(level)
    logger = structlog.get_logger()

    if args.format is None:
        args.format = getattr(args, "format_default", None) or settings.OUTPUT_FORMAT

    try:
        return args.handler(args)
    except CodeConstructionError as e:
        logger.error("Command failed", command=args.command, code=e.code, error=str(e))
        emit_error(e.to_dict())
        return 2


if __name__ == "__main__":
    sys.exit(main())
