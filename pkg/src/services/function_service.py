from abc import ABC, abstractmethod
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog

from src.config.settings import get_settings
from src.models.field import FieldCtx, FieldElement
from src.models.functions import (
    BINARY_FAMILIES,
    ODD_FAMILIES,
    CatalogEntry,
    Family,
    FunctionSpec,
    ValidityReport,
)
from src.utils.errors import FieldTooLarge, InvalidParams, NotMonomial

logger = structlog.get_logger()


# Theorem ranges on h
def kasami_h_max(m: int) -> int:
    offset = {1: 1, 3: 3, 0: 4, 2: 2}[m % 4]
    return (m - offset) // 4


def two_to_h_max(m: int) -> int:
    return (m - 1) // 2 if m % 2 else (m - 2) // 2


def geometric_h_max(m: int) -> int:
    return (m - 1) // 2 if m % 2 else m // 2


def exponent_of(family: Family, q: int, m: int, h: Optional[int] = None,
                kappa: Optional[int] = None) -> int:
    """Exponent e of a monomial family x^e"""
    if family is Family.DY_TRINOMIAL:
        raise NotMonomial("The trinomial family has no single exponent", details={"family": family.value})

    def need_h() -> int:
        if h is None or h < 1:
            raise InvalidParams(f"{family.value} needs h >= 1", details={"family": family.value})
        return h

    if family is Family.INVERSE:
        return q ** m - 2
    if family is Family.GOLD:
        return 2 ** need_h() + 1
    if family is Family.KASAMI:
        h = need_h()
        return 2 ** (2 * h) - 2 ** h + 1
    if family is Family.WELCH:
        if m % 2 == 0:
            raise InvalidParams("Welch exponent needs m odd", details={"m": m})
        return 2 ** ((m - 1) // 2) + 3
    if family is Family.NIHO1:
        if m % 4 != 1:
            raise InvalidParams("First Niho exponent needs m = 1 mod 4", details={"m": m})
        return 2 ** ((m - 1) // 2) + 2 ** ((m - 1) // 4) - 1
    if family is Family.NIHO2:
        if m % 4 != 3:
            raise InvalidParams("Second Niho exponent needs m = 3 mod 4", details={"m": m})
        return 2 ** ((m - 1) // 2) + 2 ** ((3 * m - 1) // 4) - 1
    if family is Family.DOBBERTIN:
        if m % 5:
            raise InvalidParams("Dobbertin exponent needs m = 5i", details={"m": m})
        i = m // 5
        return 2 ** (4 * i) + 2 ** (3 * i) + 2 ** (2 * i) + 2 ** i - 1
    if family is Family.TWO_TO_H_MINUS_ONE:
        return 2 ** need_h() - 1
    if family is Family.SQUARE:
        return 2
    if family is Family.DEMBOWSKI_OSTROM:
        if kappa is None or kappa < 0:
            raise InvalidParams("Dembowski-Ostrom exponent needs kappa >= 0", details={"family": family.value})
        return q ** kappa + 1
    if family is Family.QH_GEOMETRIC:
        return (q ** need_h() - 1) // (q - 1)
    if family is Family.COULTER_MATHEWS:
        return (3 ** need_h() + 1) // 2
    if family is Family.CUBE:
        return 3
    raise InvalidParams("Generic functions carry an explicit exponent", details={"family": family.value})


def trinomial_flags(u: FieldElement) -> Tuple[bool, int]:
    """(u^6 + u == 0, delta_u) with delta_u = 0 iff Tr(u^2 + u - 1) = 0"""
    u6u_zero = (u ** 6 + u).is_zero
    delta = 0 if (u * u + u - 1).trace() == 0 else 1
    return u6u_zero, delta


def validate_params(family: Family, q: int, m: int, h: Optional[int] = None,
                    kappa: Optional[int] = None, u: Optional[FieldElement] = None,
                    exponent: Optional[int] = None) -> ValidityReport:
    """Report the catalogue conditions and theorem ranges that hold"""
    report = ValidityReport(family=family, q=q, m=m, valid=True, theorem_covered=False)

    def need(name: str, condition: bool, reason: str):
        report.checks[name] = bool(condition)
        if not condition:
            report.valid = False
            report.reasons.append(reason)

    if family in BINARY_FAMILIES:
        need("binary", q == 2, f"{family.value} is defined over GF(2^m)")
    if family in ODD_FAMILIES:
        need("odd-characteristic", q % 2 == 1, f"{family.value} needs odd q")
    if family in (Family.GOLD, Family.KASAMI, Family.TWO_TO_H_MINUS_ONE,
                  Family.QH_GEOMETRIC, Family.COULTER_MATHEWS):
        need("h-given", h is not None and h >= 1, "h >= 1 is required")
        if not report.valid:
            return report

    if family is Family.INVERSE:
        if q == 2:
            # 4-uniform for even m
            apn = m % 2 == 1
            report.checks["m-odd"] = apn
            report.claimed_uniformity = 2 if apn else 4
            report.theorem_covered = report.valid and apn and m >= 3
        elif q % 3 == 2:
            report.claimed_uniformity = 2
    elif family in (Family.GOLD, Family.KASAMI):
        need("gcd-h-m", gcd(h, m) == 1, f"{family.value} needs gcd(h, m) = 1")
        report.claimed_uniformity = 2
        if family is Family.GOLD:
            report.theorem_covered = report.valid and m % 2 == 1
        else:
            in_range = 2 <= h <= kasami_h_max(m)
            report.checks["h-range"] = in_range
            report.theorem_covered = report.valid and in_range
    elif family is Family.WELCH:
        need("m-odd", m % 2 == 1 and m >= 3, "Welch needs m odd")
        report.claimed_uniformity = 2
        report.theorem_covered = report.valid and m >= 7
    elif family is Family.NIHO1:
        need("m-1-mod-4", m % 4 == 1, "first Niho needs m = 1 mod 4")
        report.claimed_uniformity = 2
        report.theorem_covered = report.valid and m >= 9
    elif family is Family.NIHO2:
        need("m-3-mod-4", m % 4 == 3, "second Niho needs m = 3 mod 4")
        report.claimed_uniformity = 2
    elif family is Family.DOBBERTIN:
        need("m-5i", m % 5 == 0, "Dobbertin needs m = 5i")
        report.claimed_uniformity = 2
    elif family is Family.TWO_TO_H_MINUS_ONE:
        need("h-below-m", h < m, "h must be below m")
        if h == 2 or (h == m - 1 and m % 2 == 1):
            report.claimed_uniformity = 2
        in_range = 2 <= h <= two_to_h_max(m)
        report.checks["h-range"] = in_range
        report.theorem_covered = report.valid and in_range
    elif family is Family.SQUARE:
        report.claimed_uniformity = 1
        report.theorem_covered = report.valid and not (q == 3 and m == 1)
    elif family is Family.DEMBOWSKI_OSTROM:
        need("kappa-given", kappa is not None and kappa >= 0, "kappa >= 0 is required")
        if report.valid:
            need("m-over-gcd-odd", (m // gcd(m, kappa)) % 2 == 1, "m / gcd(m, kappa) must be odd")
        report.claimed_uniformity = 1
        report.theorem_covered = report.valid and m % 2 == 1 and not (q == 3 and m == 1)
    elif family is Family.DY_TRINOMIAL:
        need("ternary", q == 3, "the trinomial is defined for q = 3")
        need("m-odd", m % 2 == 1, "the trinomial needs m odd")
        need("u-given", u is not None, "the trinomial needs a coefficient u")
        report.claimed_uniformity = 1
        report.theorem_covered = report.valid and m >= 3
    elif family is Family.QH_GEOMETRIC:
        in_range = 3 <= h <= geometric_h_max(m)
        report.checks["h-range"] = in_range
        report.theorem_covered = report.valid and in_range
    elif family is Family.COULTER_MATHEWS:
        need("ternary", q == 3, "Coulter-Mathews is defined for q = 3")
        need("h-odd", h % 2 == 1, "Coulter-Mathews needs h odd")
        need("gcd-h-m", gcd(h, m) == 1, "Coulter-Mathews needs gcd(h, m) = 1")
        report.claimed_uniformity = 1
        in_range = 3 <= h <= geometric_h_max(m)
        report.checks["h-range"] = in_range
        report.theorem_covered = report.valid and in_range
    elif family is Family.CUBE:
        need("p-above-3", q > 3, "x^3 is APN only for p > 3")
        report.claimed_uniformity = 2
        report.theorem_covered = report.valid
    elif family is Family.GENERIC:
        need("exponent-given", exponent is not None and exponent >= 0, "an exponent >= 0 is required")
    return report


def make_function(family: Family, q: int, m: int, h: Optional[int] = None,
                  kappa: Optional[int] = None, u: Optional[FieldElement] = None,
                  exponent: Optional[int] = None) -> FunctionSpec:
    """Validated FunctionSpec; raises InvalidParams when a catalogue condition fails"""
    report = validate_params(family, q, m, h=h, kappa=kappa, u=u, exponent=exponent)
    if not report.valid:
        raise InvalidParams(
            "; ".join(report.reasons),
            details={"family": family.value, "q": q, "m": m, "h": h, "kappa": kappa},
        )
    if family.is_monomial and family is not Family.GENERIC:
        exponent = exponent_of(family, q, m, h, kappa)
    return FunctionSpec(family=family, q=q, m=m, h=h, kappa=kappa, u=u, exponent=exponent)


def evaluate_codes(f: FunctionSpec, codes, ctx: FieldCtx) -> np.ndarray:
    """Vectorised f over field codes"""
    codes = np.asarray(codes, dtype=np.int64)
    if f.family is Family.DY_TRINOMIAL:
        u = f.u.code
        u2 = int(ctx.mul(u, u))
        x10 = ctx.power(codes, 10)
        x6 = ctx.mul(u, ctx.power(codes, 6))
        x2 = ctx.mul(u2, ctx.power(codes, 2))
        return ctx.sub(ctx.sub(x10, x6), x2)
    return ctx.power(codes, f.exponent)


def evaluate(f: FunctionSpec, x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx, int(evaluate_codes(f, x.code, x.ctx)))


class DifferentialUniformity(ABC):
    @abstractmethod
    def is_usable(self, f: FunctionSpec) -> bool:
        pass

    @abstractmethod
    def directions(self, ctx: FieldCtx) -> Sequence[int]:
        pass

    def compute(self, f: FunctionSpec, ctx: FieldCtx) -> int:
        x = ctx.elements()
        fx = evaluate_codes(f, x, ctx)
        best = 0
        for a in self.directions(ctx):
            diff = ctx.sub(evaluate_codes(f, ctx.add(x, a), ctx), fx)
            best = max(best, int(np.bincount(diff, minlength=ctx.order).max()))
        return best


class PowerMapMethod(DifferentialUniformity):
    """For x^e the counts at direction a equal those at a = 1"""

    def is_usable(self, f: FunctionSpec) -> bool:
        return f.is_monomial

    def directions(self, ctx: FieldCtx) -> Sequence[int]:
        return [1]


class ExhaustiveMethod(DifferentialUniformity):
    def is_usable(self, f: FunctionSpec) -> bool:
        return True

    def directions(self, ctx: FieldCtx) -> Sequence[int]:
        return range(1, ctx.order)


class DifferentialUniformityComputer:
    def __init__(self, methods: Optional[List[DifferentialUniformity]] = None):
        self.settings = get_settings()
        if methods is None:
            methods = [PowerMapMethod(), ExhaustiveMethod()]
        self.methods = methods

    def compute(self, f: FunctionSpec, ctx: FieldCtx) -> int:
        if ctx.order > self.settings.UNIFORMITY_MAX_FIELD:
            raise FieldTooLarge(
                "Field too large for an exhaustive difference count",
                details={"order": ctx.order, "cap": self.settings.UNIFORMITY_MAX_FIELD},
            )
        for method in self.methods:
            if method.is_usable(f):
                value = method.compute(f, ctx)
                logger.debug("Differential uniformity", family=f.family.value, q=ctx.q,
                             m=ctx.m, method=type(method).__name__, value=value)
                return value
        raise ValueError("No suitable method found for computing differential uniformity.")


uniformity_computer = DifferentialUniformityComputer()


def differential_uniformity(f: FunctionSpec, ctx: FieldCtx) -> int:
    """max over a != 0 and b of |{x : f(x + a) - f(x) = b}|"""
    return uniformity_computer.compute(f, ctx)


def trinomial_claim_holds(ctx: FieldCtx) -> bool:
    """u^2 + u - 1 is nonzero for every u in the field"""
    u = ctx.elements()
    v = ctx.sub(ctx.add(ctx.mul(u, u), u), 1)
    return bool(np.all(v != 0))


CATALOG: List[CatalogEntry] = [
    CatalogEntry(Family.INVERSE, "q^m-2", "any", "q=2, m odd >= 3",
                 "APN (q=2, m odd), 4-uniform (q=2, m even)"),
    CatalogEntry(Family.GOLD, "2^h+1", "q=2, gcd(h,m)=1", "m odd", "APN"),
    CatalogEntry(Family.KASAMI, "2^{2h}-2^h+1", "q=2, gcd(h,m)=1", "2 <= h <= (m-r)/4, r by m mod 4", "APN"),
    CatalogEntry(Family.WELCH, "2^{(m-1)/2}+3", "q=2, m odd", "m >= 7", "APN"),
    CatalogEntry(Family.NIHO1, "2^{(m-1)/2}+2^{(m-1)/4}-1", "q=2, m = 1 mod 4", "m >= 9", "APN"),
    CatalogEntry(Family.NIHO2, "2^{(m-1)/2}+2^{(3m-1)/4}-1", "q=2, m = 3 mod 4", "none (open)", "APN"),
    CatalogEntry(Family.DOBBERTIN, "2^{4i}+2^{3i}+2^{2i}+2^i-1", "q=2, m = 5i", "none (open)", "APN"),
    CatalogEntry(Family.TWO_TO_H_MINUS_ONE, "2^h-1", "q=2, 1 <= h < m",
                 "2 <= h <= (m-1)/2 (m odd), (m-2)/2 (m even)", "APN for h=2"),
    CatalogEntry(Family.SQUARE, "2", "q odd", "(q,m) != (3,1)", "planar"),
    CatalogEntry(Family.DEMBOWSKI_OSTROM, "q^kappa+1", "q odd, m/gcd(m,kappa) odd", "m odd", "planar"),
    CatalogEntry(Family.DY_TRINOMIAL, "x^10-ux^6-u^2x^2", "q=3, m odd", "m >= 3", "planar"),
    CatalogEntry(Family.QH_GEOMETRIC, "(q^h-1)/(q-1)", "q odd", "3 <= h <= (m-1)/2 (m odd), m/2 (m even)", "none"),
    CatalogEntry(Family.COULTER_MATHEWS, "(3^h+1)/2", "q=3, h odd, gcd(h,m)=1",
                 "3 <= h <= (m-1)/2 (m odd), m/2 (m even)", "planar"),
    CatalogEntry(Family.CUBE, "3", "q > 3", "all m", "APN"),
    CatalogEntry(Family.GENERIC, "e", "any exponent", "none", "none"),
]


def catalog() -> List[CatalogEntry]:
    return list(CATALOG)
