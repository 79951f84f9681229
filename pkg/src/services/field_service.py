import time
from math import gcd
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_pow_mod

from src.config.moduli import get_modulus
from src.config.settings import get_settings
from src.models.cosets import orbit
from src.models.field import FieldCtx, FieldElement
from src.models.poly import Poly
from src.models.schemas import FieldSummary
from src.utils.errors import (
    BaseFieldLeak,
    FieldTooLarge,
    InvalidArgs,
    NotIrreducible,
    NotPrimitive,
    UnsupportedBase,
)

logger = structlog.get_logger()

ModulusInput = Union[Poly, Sequence[int]]


def _descending(coeffs: Sequence[int]) -> list:
    return [ZZ(int(c)) for c in reversed(coeffs)]


def is_irreducible(coeffs: Sequence[int], q: int) -> bool:
    """Irreducibility over GF(q) of an ascending coefficient list"""
    return bool(gf_irreducible_p(_descending(coeffs), q, ZZ))


def x_is_primitive(coeffs: Sequence[int], q: int) -> bool:
    """True when x has multiplicative order q^m - 1 modulo the polynomial"""
    m = len(coeffs) - 1
    n = q ** m - 1
    f = _descending(coeffs)
    x = [ZZ(1), ZZ(0)]
    one = [ZZ(1)]
    if gf_pow_mod(x, n, f, q, ZZ) != one:
        return False
    return all(gf_pow_mod(x, n // r, f, q, ZZ) != one for r in factorint(n))


def _power_table(q: int, m: int, coeffs: Sequence[int], chunk: int) -> np.ndarray:
    """Codes of alpha^0 ... alpha^{n-1}.

    A short prefix is generated one multiplication by alpha at a time; the
    table is then doubled with the matrix of multiplication by alpha^L.
    """
    n = q ** m - 1
    low = np.array(coeffs[:m], dtype=np.int64)
    weights = q ** np.arange(m, dtype=np.int64)

    def times_alpha(digits: np.ndarray) -> np.ndarray:
        shifted = np.concatenate(([0], digits[:-1]))
        return (shifted - digits[-1] * low) % q

    seed = min(n, max(2 * m, 64))
    rows = np.zeros((seed, m), dtype=np.int64)
    current = np.zeros(m, dtype=np.int64)
    current[0] = 1
    for i in range(seed):
        rows[i] = current
        current = times_alpha(current)

    codes = np.empty(n, dtype=np.int64)
    codes[:seed] = rows @ weights
    filled = seed
    while filled < n:
        block = np.empty((m, m), dtype=np.int64)
        vec = times_alpha((codes[filled - 1] // weights) % q)
        for i in range(m):
            block[i] = vec
            vec = times_alpha(vec)
        count = min(filled, n - filled)
        for start in range(0, count, chunk):
            stop = min(count, start + chunk)
            digits = (codes[start:stop, None] // weights) % q
            codes[filled + start: filled + stop] = ((digits @ block) % q) @ weights
        filled += count
    return codes


def _basis_traces(q: int, m: int, exp: np.ndarray) -> np.ndarray:
    """Tr(alpha^i) for i < m as base-field scalars"""
    n = exp.size
    weights = q ** np.arange(m, dtype=np.int64)
    frob = np.array([pow(q, j, n) for j in range(m)], dtype=np.int64)
    conjugates = exp[(np.arange(m)[:, None] * frob[None, :]) % n]
    digits = ((conjugates[..., None] // weights) % q).sum(axis=1) % q
    if np.any(digits[:, 1:]):
        raise BaseFieldLeak("Trace of a basis element left GF(q)", details={"q": q, "m": m})
    return digits[:, 0].copy()


class FieldService:
    """Builds and caches extension fields"""

    def __init__(self):
        self.settings = get_settings()
        self._cache: Dict[Tuple[int, int, Tuple[int, ...]], FieldCtx] = {}

    def build_field(self, q: int, m: int, modulus: Optional[ModulusInput] = None) -> FieldCtx:
        """Construct GF(q^m) with alpha = x mod modulus"""
        if not isprime(q):
            raise UnsupportedBase(
                f"Base field order {q} is not prime",
                details={"q": q},
            )
        if m < 1:
            raise InvalidArgs("Extension degree must be at least 1", details={"m": m})
        n = q ** m - 1
        if n > self.settings.FIELD_MAX_PERIOD:
            raise FieldTooLarge(
                f"GF({q}^{m}) exceeds the table cap",
                details={"n": n, "cap": self.settings.FIELD_MAX_PERIOD},
            )

        coeffs = self._coerce_modulus(q, m, modulus)
        key = (q, m, coeffs)
        if key in self._cache:
            return self._cache[key]

        if not is_irreducible(coeffs, q):
            raise NotIrreducible(
                f"{Poly(q, coeffs).to_text()} is reducible over GF({q})",
                details={"modulus": list(coeffs)},
            )
        if not x_is_primitive(coeffs, q):
            raise NotPrimitive(
                f"x is not primitive modulo {Poly(q, coeffs).to_text()}",
                details={"modulus": list(coeffs)},
            )

        start_time = time.time()
        exp = _power_table(q, m, coeffs, self.settings.ENUMERATION_CHUNK)
        log = np.full(q ** m, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if log[0] != -1 or np.count_nonzero(log >= 0) != n:
            raise NotPrimitive(
                "Powers of alpha are not distinct",
                details={"modulus": list(coeffs)},
            )
        traces = _basis_traces(q, m, exp)
        for table in (exp, log, traces):
            table.setflags(write=False)

        ctx = FieldCtx(q=q, m=m, modulus=Poly(q, coeffs), exp=exp, log=log, basis_traces=traces)
        self._cache[key] = ctx
        logger.info(
            "Field constructed",
            q=q,
            m=m,
            n=n,
            modulus=ctx.modulus.to_text(),
            duration_ms=int((time.time() - start_time) * 1000),
        )
        return ctx

    def resolve_modulus(self, q: int, m: int) -> List[int]:
        """Embedded modulus when one is pinned, else the first primitive one"""
        coeffs = get_modulus(q, m)
        if coeffs is not None:
            return coeffs
        return list(find_primitive_modulus(q, m))

    def describe(self, ctx: FieldCtx) -> FieldSummary:
        alpha = ctx.alpha()
        return FieldSummary(
            q=ctx.q,
            m=ctx.m,
            n=ctx.n,
            modulus=ctx.modulus.to_list(),
            modulus_text=ctx.modulus.to_text(),
            alpha_order=multiplicative_order(alpha),
            trace_alpha=alpha.trace(),
        )

    def _coerce_modulus(self, q: int, m: int, modulus: Optional[ModulusInput]) -> Tuple[int, ...]:
        if modulus is None:
            return tuple(self.resolve_modulus(q, m))
        raw = list(modulus.coeffs) if isinstance(modulus, Poly) else [int(c) for c in modulus]
        if any(c < 0 or c >= q for c in raw):
            raise InvalidArgs(
                f"Modulus coefficients must lie in [0, {q})",
                details={"modulus": raw},
            )
        if len(raw) != m + 1 or raw[-1] != 1:
            raise InvalidArgs(
                f"Modulus must be monic of degree {m}",
                details={"modulus": raw},
            )
        return tuple(raw)


@lru_cache(maxsize=None)
def find_primitive_modulus(q: int, m: int) -> Tuple[int, ...]:
    """Smallest monic primitive polynomial of degree m.

    Candidates are ordered lexicographically on the ascending tuple
    (c0, c1, ..., c_{m-1}), so c0 is the most significant digit.
    """
    for index in range(q ** m):
        coeffs = tuple((index // q ** (m - 1 - i)) % q for i in range(m)) + (1,)
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, q) and x_is_primitive(coeffs, q):
            logger.debug("Primitive modulus found", q=q, m=m, modulus=list(coeffs))
            return coeffs
    raise NotPrimitive(f"No primitive polynomial of degree {m} over GF({q})")


def trace(x: FieldElement, ctx: Optional[FieldCtx] = None) -> int:
    """Tr(x) = x + x^q + ... + x^{q^{m-1}}"""
    ctx = ctx or x.ctx
    return int(ctx.trace(x.code))


def multiplicative_order(x: FieldElement) -> int:
    if x.is_zero:
        return 0
    n = x.ctx.n
    k = x.log
    return n // gcd(n, k)


def minimal_polynomial(j: int, ctx: FieldCtx) -> Poly:
    """m_{alpha^j}(x) = prod over i in C_j of (x - alpha^i)"""
    return _minimal_polynomial(ctx, min(orbit(j % ctx.n, ctx.q, ctx.n)))


@lru_cache(maxsize=8192)
def _minimal_polynomial(ctx: FieldCtx, leader: int) -> Poly:
    roots = ctx.exp[list(orbit(leader, ctx.q, ctx.n))]
    coeffs = np.array([1], dtype=np.int64)
    for root in roots:
        shifted = np.concatenate(([0], coeffs))
        scaled = np.concatenate((ctx.mul(root, coeffs), [0]))
        coeffs = np.asarray(ctx.sub(shifted, scaled), dtype=np.int64)
    if np.any(coeffs >= ctx.q):
        raise BaseFieldLeak(
            f"Minimal polynomial of alpha^{leader} has coefficients outside GF({ctx.q})",
            details={"leader": leader},
        )
    return Poly.from_array(ctx.q, coeffs)


def evaluate_poly(poly: Poly, points: Union[int, np.ndarray], ctx: FieldCtx) -> np.ndarray:
    """Horner evaluation of a GF(q) polynomial at field codes"""
    points = np.asarray(points, dtype=np.int64)
    acc = np.zeros_like(points)
    for c in reversed(poly.coeffs):
        acc = ctx.add(ctx.mul(acc, points), c)
    return np.asarray(acc, dtype=np.int64)


field_service = FieldService()
