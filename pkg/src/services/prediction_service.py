"""Generator polynomials and linear spans predicted by the family theorems.

Each builder returns the power c of (x - 1) and the exponents j whose
minimal polynomials m_{alpha^{-j}} make up the predicted generator
(x - 1)^c * prod m_{alpha^{-j}}. Spans come from the closed forms and are
computed independently of the builders.
"""
from typing import Callable, Dict, List, Optional, Tuple

import structlog

from src.models.field import FieldCtx
from src.models.functions import Family, FunctionSpec
from src.models.poly import Poly, poly_product
from src.services.cyclotomy_service import (
    build_cosets,
    coset_stats,
    coulter_mathews_exponents,
    epsilon_table,
    geometric_exponents,
    n_choose_chain,
    n_p,
    n_t_closed_form,
)
from src.services.field_service import minimal_polynomial
from src.services.function_service import trinomial_flags, validate_params
from src.utils.errors import TheoremPreconditionUnmet

logger = structlog.get_logger()

Factors = Tuple[int, List[int]]


def _require(f: FunctionSpec, differential: bool = False):
    report = validate_params(f.family, f.q, f.m, h=f.h, kappa=f.kappa, u=f.u, exponent=f.exponent)
    if not report.theorem_covered:
        raise TheoremPreconditionUnmet(
            f"No proved prediction for {f.family.value} at these parameters",
            details={"family": f.family.value, "q": f.q, "m": f.m, **_plain(f.params())},
        )
    supported = DIFFERENTIAL_FAMILIES if differential else None
    if supported is not None and f.family not in supported:
        raise TheoremPreconditionUnmet(
            f"No proved differential prediction for {f.family.value}",
            details={"family": f.family.value},
        )


def _plain(params: Dict[str, object]) -> Dict[str, object]:
    return {k: (v if isinstance(v, (int, str)) else str(v)) for k, v in params.items()}


def _window_factors(m: int, h: int, shift: int) -> Factors:
    """x^{shift + 2^h - 1}: window shift + {0..2^h-1} plus odd a with epsilon_a odd"""
    window = [shift + i for i in range(2 ** h)]
    odd = epsilon_table(h).odd_leaders()
    if h % 2 == 1:
        # Tr(x) appears h + 1 times
        window = window[1:]
        odd = [a for a in odd if a != 1]
    return n_p(m, 2), window + odd


# Defining-sequence builders
def _inverse(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    table = build_cosets(2, ctx.n)
    stats = coset_stats(table, f.m)
    return 0, [j for j in table.leaders if stats.nu[j] == 1]


def _gold(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    return 1, [2 ** f.h + 1]


def _welch(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    t = (f.m - 1) // 2
    return 1, [1, 3, 2 ** t + 1, 2 ** t + 2, 2 ** t + 3]


def _two_to_h(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    return n_p(f.m, 2), epsilon_table(f.h).odd_leaders()


def _niho1(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    h = (f.m - 1) // 4
    return _window_factors(f.m, h, 2 ** (2 * h))


def _kasami(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    # x^e is conjugate to x^{2^{m-h} + 2^h - 1}
    return _window_factors(f.m, f.h, 2 ** (f.m - f.h))


def _square(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    return n_p(f.m, f.q), [1, 2]


def _dembowski_ostrom(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    return n_p(f.m, f.q), [1, f.q ** f.kappa + 1]


def _trinomial(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    u6u_zero, delta = trinomial_flags(f.u)
    exponents = []
    if not trinomial_c1(f).is_zero:
        exponents.append(1)
    exponents.append(10)
    if not u6u_zero:
        exponents.append(2)
    return delta, exponents


def _geometric(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    p = f.q
    exponents = [e for e, u in sorted(geometric_exponents(p, f.h).items()) if n_p(f.h - u, p)]
    return n_p(f.m, p), exponents


def _coulter_mathews(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    exponents = []
    for e, u in sorted(coulter_mathews_exponents(f.h).items()):
        if u is None or n_p(f.h - u + 1, 3):
            exponents.append(e)
    return n_p(f.m, 3), exponents


def _cube(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    return n_p(f.m, f.q), [1, 2, 3]


BUILDERS: Dict[Family, Callable[[FunctionSpec, FieldCtx], Factors]] = {
    Family.INVERSE: _inverse,
    Family.GOLD: _gold,
    Family.WELCH: _welch,
    Family.TWO_TO_H_MINUS_ONE: _two_to_h,
    Family.NIHO1: _niho1,
    Family.KASAMI: _kasami,
    Family.SQUARE: _square,
    Family.DEMBOWSKI_OSTROM: _dembowski_ostrom,
    Family.DY_TRINOMIAL: _trinomial,
    Family.QH_GEOMETRIC: _geometric,
    Family.COULTER_MATHEWS: _coulter_mathews,
    Family.CUBE: _cube,
}


# Differential-sequence builders
def _welch_differential(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    t = (f.m - 1) // 2
    return 1, [1, 3, 2 ** t + 1, 2 ** t + 2]


def _affine_differential(f: FunctionSpec, ctx: FieldCtx) -> Factors:
    # f(x + 1) - f(x) = 2x + 1 up to Frobenius twists
    return n_p(f.m, f.q), [1]


DIFFERENTIAL_BUILDERS: Dict[Family, Callable[[FunctionSpec, FieldCtx], Factors]] = {
    Family.WELCH: _welch_differential,
    Family.SQUARE: _affine_differential,
    Family.DEMBOWSKI_OSTROM: _affine_differential,
}

DIFFERENTIAL_FAMILIES = frozenset(DIFFERENTIAL_BUILDERS)


def trinomial_c1(f: FunctionSpec):
    """Coefficient of Tr(c x) in Tr(f(x + 1)): u^2 + u^{3^{m-1}} - 1"""
    u = f.u
    return u * u + u ** (3 ** (f.m - 1)) - 1


def predicted_factors(f: FunctionSpec, ctx: FieldCtx, differential: bool = False) -> Factors:
    _require(f, differential)
    builders = DIFFERENTIAL_BUILDERS if differential else BUILDERS
    if f.family not in builders:
        raise TheoremPreconditionUnmet(
            f"No closed-form prediction for {f.family.value}",
            details={"family": f.family.value},
        )
    return builders[f.family](f, ctx)


def predicted_generator(f: FunctionSpec, ctx: FieldCtx, differential: bool = False) -> Poly:
    """(x - 1)^c times the minimal polynomials of alpha^{-j} for the predicted exponents"""
    constant, exponents = predicted_factors(f, ctx, differential)
    factors = [Poly.x_minus(ctx.q, 1) ** constant]
    factors.extend(minimal_polynomial(-j, ctx) for j in exponents)
    generator = poly_product(factors, ctx.q)
    logger.debug(
        "Predicted generator",
        family=f.family.value,
        differential=differential,
        constant=constant,
        exponents=exponents,
        degree=generator.degree,
    )
    return generator


def _chains_sum(p: int, h: int, weight: Callable[[int], int]) -> int:
    """sum over 2 <= t <= h-1, t <= u <= h-1 of weight(u) * N(u, t)"""
    return sum(
        weight(u) * n_choose_chain(u, t)
        for t in range(2, h)
        for u in range(t, h)
    )


def predicted_span(f: FunctionSpec, ctx: Optional[FieldCtx] = None, differential: bool = False) -> int:
    """Closed-form linear span of the defining (or differential) sequence"""
    _require(f, differential)
    q, m, h = f.q, f.m, f.h
    family = f.family
    if differential:
        if family is Family.WELCH:
            return 4 * m + 1
        return m + n_p(m, q)

    if family is Family.INVERSE:
        return (q ** m) // 2
    if family is Family.GOLD:
        return m + 1
    if family is Family.WELCH:
        return 5 * m + 1
    if family is Family.TWO_TO_H_MINUS_ONE:
        return m * n_t_closed_form(h) + n_p(m, 2)
    if family in (Family.NIHO1, Family.KASAMI):
        if family is Family.NIHO1:
            h = (m - 1) // 4
        odd = 1 if h % 2 else 0
        return m * (2 ** (h + 2) + (-1) ** (h - 1) - 6 * odd) // 3 + n_p(m, 2)
    if family in (Family.SQUARE, Family.DEMBOWSKI_OSTROM):
        return 2 * m + n_p(m, q)
    if family is Family.CUBE:
        return 3 * m + n_p(m, q)
    if family is Family.DY_TRINOMIAL:
        if f.u is None:
            raise TheoremPreconditionUnmet("The trinomial span depends on u", details={"family": family.value})
        u6u_zero, delta = trinomial_flags(f.u)
        terms = 1 + (0 if trinomial_c1(f).is_zero else 1) + (0 if u6u_zero else 1)
        return delta + m * terms
    if family is Family.QH_GEOMETRIC:
        p = q
        single = sum(n_p(h - u, p) for u in range(1, h))
        chains = _chains_sum(p, h, lambda u: n_p(h - u, p))
        return n_p(m, p) + m * (n_p(h, p) + single + chains)
    if family is Family.COULTER_MATHEWS:
        singles = sum(n_p(h - i + 1, 3) for i in range(0, h + 1))
        twos = sum(n_choose_chain(h, t) for t in range(2, h + 1))
        chains = _chains_sum(3, h, lambda u: n_p(h - u + 1, 3))
        return n_p(m, 3) + m * (singles + twos + chains)
    raise TheoremPreconditionUnmet(
        f"No closed-form span for {family.value}",
        details={"family": family.value},
    )
