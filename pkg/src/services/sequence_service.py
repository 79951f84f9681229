import time
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from src.config.settings import get_settings
from src.models.field import FieldCtx
from src.models.functions import FunctionSpec
from src.models.poly import Poly, poly_gcd, poly_product
from src.models.sequences import CyclicCode, PeriodicSequence, SpectralForm
from src.services.cyclotomy_service import build_cosets
from src.services.field_service import evaluate_poly, minimal_polynomial
from src.services.function_service import evaluate_codes
from src.utils.errors import BaseFieldLeak, CapExceeded, PeriodMismatch

logger = structlog.get_logger()

FunctionLike = Union[FunctionSpec, Callable[[np.ndarray], np.ndarray]]


def _apply(f: FunctionLike, codes: np.ndarray, ctx: FieldCtx) -> np.ndarray:
    if isinstance(f, FunctionSpec):
        return evaluate_codes(f, codes, ctx)
    return np.asarray(f(codes), dtype=np.int64)


class SequenceService:
    """Sequences from functions, their minimal polynomials and codes"""

    def __init__(self):
        self.settings = get_settings()

    def defining_sequence(self, f: FunctionLike, ctx: FieldCtx) -> PeriodicSequence:
        """s_t = Tr(f(alpha^t + 1)) for 0 <= t < n"""
        points = ctx.add(ctx.exp, 1)
        terms = ctx.trace(_apply(f, points, ctx))
        return PeriodicSequence(q=ctx.q, terms=terms, ctx=ctx)

    def differential_sequence(self, f: FunctionLike, ctx: FieldCtx) -> PeriodicSequence:
        """s_t = Tr(f(alpha^t + 1) - f(alpha^t))"""
        shifted = _apply(f, ctx.add(ctx.exp, 1), ctx)
        plain = _apply(f, ctx.exp, ctx)
        terms = ctx.trace(ctx.sub(shifted, plain))
        return PeriodicSequence(q=ctx.q, terms=terms, ctx=ctx)

    def minimal_poly_gcd(self, s: PeriodicSequence) -> Tuple[Poly, int]:
        """M_s = (x^L - 1) / gcd(x^L - 1, S(x)); span = deg M_s"""
        x_l = Poly.x_pow_minus_one(s.q, s.period)
        common = poly_gcd(x_l, s.poly())
        minimal = x_l.exact_div(common)
        return minimal, minimal.degree

    def minimal_poly_spectral(self, s: PeriodicSequence,
                              ctx: Optional[FieldCtx] = None) -> Tuple[SpectralForm, Poly, int]:
        """Recover s_t = sum c_i alpha^{it}; M_s = prod over the support of (x - alpha^{-i})"""
        ctx = ctx or s.ctx
        if ctx is None or s.period != ctx.n:
            raise PeriodMismatch(
                "Spectral form needs a period-n sequence over its field",
                details={"period": s.period, "n": ctx.n if ctx is not None else None},
            )
        n, q = ctx.n, ctx.q
        if n > self.settings.SPECTRAL_MAX_PERIOD:
            raise CapExceeded(
                f"Period {n} exceeds the spectral cap",
                details={"n": n, "cap": self.settings.SPECTRAL_MAX_PERIOD},
            )

        table = build_cosets(q, n)
        digits = ctx.digits(ctx.exp)
        t = np.arange(n, dtype=np.int64)
        terms = s.terms
        coefficients = {}
        for leader in table.leaders:
            # n = -1 in GF(q), so c_j = -sum_t s_t alpha^{-jt}
            summed = (terms @ digits[(-leader * t) % n]) % q
            c = int(ctx.from_digits(-summed))
            if c == 0:
                continue
            for k, i in enumerate(table.coset(leader)):
                coefficients[i] = int(ctx.power(c, q ** k))

        self._spot_check(terms, coefficients, ctx)
        form = SpectralForm(coefficients=coefficients)
        leaders = sorted({table.leader(i) for i in coefficients})
        minimal = poly_product((minimal_polynomial(-j, ctx) for j in leaders), q)
        return form, minimal, form.span

    def _spot_check(self, terms: np.ndarray, coefficients: dict, ctx: FieldCtx):
        n = ctx.n
        count = min(n, self.settings.SPOT_CHECK_INDICES)
        indices = np.unique(np.linspace(0, n - 1, count).astype(np.int64))
        support = np.array(sorted(coefficients), dtype=np.int64)
        values = np.array([coefficients[i] for i in support], dtype=np.int64)
        for index in indices:
            if support.size:
                parts = ctx.mul(values, ctx.exp[(support * index) % n])
                total = int(ctx.from_digits(ctx.digits(parts).sum(axis=0)))
            else:
                total = 0
            if total != int(terms[index]):
                raise BaseFieldLeak(
                    "Spectral expansion does not reproduce the sequence",
                    details={"t": int(index), "expected": int(terms[index]), "got": total},
                )

    def berlekamp_massey(self, s: Union[PeriodicSequence, Sequence[int]], q: Optional[int] = None,
                         periods: int = 2) -> Tuple[int, Poly]:
        """Shortest LFSR for the input, as (span, connection polynomial C with C(0) = 1).

        A PeriodicSequence is unrolled over ``periods`` full periods.
        """
        if isinstance(s, PeriodicSequence):
            q = s.q
            seq = s.periods(periods)
        else:
            if q is None:
                raise ValueError("q is required for a raw term list")
            seq = np.asarray(s, dtype=np.int64) % q
        size = seq.size
        current = np.zeros(size + 1, dtype=np.int64)
        previous = np.zeros(size + 1, dtype=np.int64)
        current[0] = previous[0] = 1
        span, previous_len = 0, 1
        last_disc, shift = 1, 1

        for i in range(size):
            disc = int(seq[i] + current[1: span + 1] @ seq[i - span: i][::-1]) % q
            if disc == 0:
                shift += 1
                continue
            coef = (disc * pow(last_disc, -1, q)) % q
            stop = min(size + 1, shift + previous_len)
            if 2 * span <= i:
                saved, saved_len = current.copy(), span + 1
                current[shift:stop] = (current[shift:stop] - coef * previous[: stop - shift]) % q
                span = i + 1 - span
                previous, previous_len = saved, saved_len
                last_disc, shift = disc, 1
            else:
                current[shift:stop] = (current[shift:stop] - coef * previous[: stop - shift]) % q
                shift += 1

        return span, Poly.from_array(q, current[: span + 1])

    def code_from_sequence(self, s: PeriodicSequence) -> CyclicCode:
        """Cyclic code generated by M_s; zero set recovered when the field is known"""
        start_time = time.time()
        generator, span = self.minimal_poly_gcd(s)
        zero_set: Tuple[int, ...] = ()
        ctx = s.ctx
        if ctx is not None and ctx.n == s.period:
            zero_set = zero_set_of(generator, ctx)
        logger.debug(
            "Code from sequence",
            q=s.q,
            n=s.period,
            span=span,
            duration_ms=int((time.time() - start_time) * 1000),
        )
        return CyclicCode(q=s.q, n=s.period, generator=generator, zero_set=zero_set, ctx=ctx)

    def linear_span(self, s: PeriodicSequence, method: str = "gcd") -> int:
        if method == "gcd":
            return self.minimal_poly_gcd(s)[1]
        if method == "spectral":
            return self.minimal_poly_spectral(s)[2]
        if method == "bm":
            return self.berlekamp_massey(s)[0]
        raise ValueError(f"Unknown span method: {method}")


def zero_set_of(generator: Poly, ctx: FieldCtx) -> Tuple[int, ...]:
    """Coset leaders j with g(alpha^j) = 0"""
    table = build_cosets(ctx.q, ctx.n)
    leaders = np.array(table.leaders, dtype=np.int64)
    values = evaluate_poly(generator, ctx.exp[leaders], ctx)
    return tuple(int(j) for j in leaders[values == 0])


def code_from_generator(generator: Poly, ctx: FieldCtx) -> CyclicCode:
    return CyclicCode(q=ctx.q, n=ctx.n, generator=generator.monic(),
                      zero_set=zero_set_of(generator, ctx), ctx=ctx)


sequence_service = SequenceService()
