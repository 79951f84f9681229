import argparse

import structlog

from src.models.poly import Poly
from src.models.schemas import DistanceReport
from src.services.analysis_service import analysis_service
from src.services.code_service import code_service
from src.services.field_service import field_service
from src.services.function_service import catalog
from src.services.sequence_service import code_from_generator
from src.utils.errors import InvalidArgs
from src.utils.output import emit
from src.utils.validators import parse_family, parse_modulus, parse_poly

logger = structlog.get_logger()


def add_function_args(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--family", required=required, help="catalogue family, see `catalog`")
    parser.add_argument("--q", type=int, required=required)
    parser.add_argument("--m", type=int, required=required)
    parser.add_argument("--h", type=int)
    parser.add_argument("--kappa", type=int)
    parser.add_argument("--u", help="trinomial coefficient: 1, -1, alpha, alpha^k")
    parser.add_argument("--exponent", type=int, help="exponent of a generic monomial")
    parser.add_argument("--modulus", help="x^3+x+1 or ascending coefficients 1,1,0,1")
    parser.add_argument("--differential", action="store_true",
                        help="use Tr(f(x+1) - f(x)) instead of Tr(f(x+1))")


def add_budget_args(parser: argparse.ArgumentParser):
    parser.add_argument("--max-work", type=int)
    parser.add_argument("--max-weight", type=int)
    parser.add_argument("--max-seconds", type=float)


def register(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser):
    build = subparsers.add_parser("build", parents=[parent], help="Build the cyclic code of a function")
    add_function_args(build)
    build.add_argument("--dual", action="store_true", help="also report the dual code")
    build.add_argument("--no-distance", action="store_true", help="bounds only, skip the search")
    add_budget_args(build)
    build.set_defaults(handler=build_command)

    distance = subparsers.add_parser("distance", parents=[parent],
                                     help="Minimum distance of a code given by family or generator")
    add_function_args(distance, required=False)
    distance.add_argument("--generator", help="generator polynomial, e.g. x^4+x^3+x^2+1")
    add_budget_args(distance)
    distance.set_defaults(handler=distance_command)

    listing = subparsers.add_parser("catalog", parents=[parent], help="List the function families")
    listing.set_defaults(handler=catalog_command)


def _build(args: argparse.Namespace, **options):
    return code_service.build(
        parse_family(args.family), args.q, args.m,
        h=args.h, kappa=args.kappa, u=args.u, exponent=args.exponent,
        modulus=parse_modulus(args.modulus, args.q),
        differential=args.differential,
        max_work=args.max_work, max_weight=args.max_weight, max_seconds=args.max_seconds,
        **options,
    )


def build_command(args: argparse.Namespace) -> int:
    """
    Build a code and print its record

    Exits 1 when a theorem prediction exists and disagrees with the measured code.
    """
    built = _build(args, bounds=True, distance=not args.no_distance, dual=args.dual)
    emit(code_service.record(built), args.format)
    return 1 if built.predicted_match is False else 0


def distance_command(args: argparse.Namespace) -> int:
    if args.q is None or args.m is None:
        raise InvalidArgs("distance needs --q and --m")
    if args.generator:
        ctx = field_service.build_field(args.q, args.m, parse_modulus(args.modulus, args.q))
        generator = parse_poly(args.generator, args.q)
        if not generator.divides(Poly.x_pow_minus_one(args.q, ctx.n)):
            raise InvalidArgs(
                f"{generator.to_text()} does not divide x^{ctx.n}-1",
                details={"generator": args.generator, "n": ctx.n},
            )
        code = code_from_generator(generator, ctx)
    elif args.family:
        code = _build(args, bounds=False).code
    else:
        raise InvalidArgs("distance needs --generator or --family")

    result = analysis_service.minimum_distance(
        code, max_work=args.max_work, max_weight=args.max_weight, max_seconds=args.max_seconds
    )
    emit(
        DistanceReport(
            q=code.q,
            n=code.n,
            k=code.k,
            generator=code.generator.to_text(),
            distance_lo=result.lo,
            distance_hi=result.hi,
            distance_exact=result.exact,
            strategy=result.strategy,
            work=result.work,
            all_weights_even=result.all_even,
        ),
        args.format,
    )
    return 0


def catalog_command(args: argparse.Namespace) -> int:
    entries = [
        {
            "family": entry.family.value,
            "exponent": entry.exponent,
            "validity": entry.validity,
            "theorem_range": entry.theorem_range,
            "claim": entry.claim,
        }
        for entry in catalog()
    ]
    emit(entries, args.format)
    return 0
