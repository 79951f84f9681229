import argparse

import structlog

from src.models.schemas import CosetEntry
from src.services.cyclotomy_service import build_cosets, coset_stats
from src.services.field_service import field_service
from src.utils.errors import InvalidArgs
from src.utils.output import emit
from src.utils.validators import parse_modulus

logger = structlog.get_logger()


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser):
    field = subparsers.add_parser("field", parents=[parent], help="Construct GF(q^m) and summarise it")
    field.add_argument("--q", type=int, required=True)
    field.add_argument("--m", type=int, required=True)
    field.add_argument("--modulus", help="x^3+x+1 or ascending coefficients 1,1,0,1")
    field.set_defaults(handler=field_command)

    cosets = subparsers.add_parser("cosets", parents=[parent], help="List q-cyclotomic cosets modulo n")
    cosets.add_argument("--q", type=int, required=True)
    group = cosets.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, help="n = q^m - 1")
    group.add_argument("--n", type=int)
    cosets.set_defaults(handler=cosets_command)


def field_command(args: argparse.Namespace) -> int:
    """
    Build the field and print n, the modulus, the order of alpha and Tr(alpha)
    """
    ctx = field_service.build_field(args.q, args.m, parse_modulus(args.modulus, args.q))
    emit(field_service.describe(ctx), args.format)
    return 0


def cosets_command(args: argparse.Namespace) -> int:
    q = args.q
    if args.m is not None:
        if args.m < 1:
            raise InvalidArgs("m must be at least 1", details={"m": args.m})
        n = q ** args.m - 1
    else:
        n = args.n
    table = build_cosets(q, n)

    # rho/nu need n = 2^m - 1
    stats = None
    if q == 2 and args.m is not None:
        stats = coset_stats(table, args.m)

    entries = [
        CosetEntry(
            leader=j,
            size=table.sizes[j],
            elements=list(table.coset(j)),
            rho=stats.rho[j] if stats else None,
            nu=stats.nu[j] if stats else None,
        )
        for j in table.leaders
    ]
    logger.info("Cosets listed", q=q, n=n, count=len(entries))
    emit(entries, args.format)
    return 0
