"""Parameter sweeps over the families whose codes are still undetermined"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import structlog

from src.config.settings import get_settings
from src.models.functions import Family
from src.models.schemas import SweepRow
from src.services.code_service import code_service
from src.services.function_service import kasami_h_max, validate_params
from src.utils.errors import CapExceeded, CodeConstructionError, InvalidArgs
from src.utils.validators import format_leaders

logger = structlog.get_logger()

# (family, q, m, params) for one code
Instance = Tuple[Family, int, int, Dict[str, int]]


@dataclass(frozen=True)
class Sweep:
    """A named open case: its base fields and the instances it expands to per m"""

    id: str
    about: str
    bases: Tuple[int, ...]
    expand: Callable[[int, int], List[Instance]]
    distance: bool = False
    default_m: Tuple[int, int] = (2, 8)


def _kasami_wide(q: int, m: int) -> List[Instance]:
    r = {1: 1, 3: 3, 0: 4, 2: 2}[m % 4]
    return [(Family.KASAMI, q, m, {"h": h})
            for h in range(kasami_h_max(m) + 1, (m - r) // 2 + 1)
            if h >= 1 and gcd(h, m) == 1]


def _niho2(q: int, m: int) -> List[Instance]:
    return [(Family.NIHO2, q, m, {})] if m % 4 == 3 else []


def _dobbertin(q: int, m: int) -> List[Instance]:
    return [(Family.DOBBERTIN, q, m, {})] if m % 5 == 0 else []


def _qh(q: int, m: int) -> List[Instance]:
    return [(Family.QH_GEOMETRIC, q, m, {"h": 3})]


def _cm(q: int, m: int) -> List[Instance]:
    return [(Family.COULTER_MATHEWS, q, m, {"h": 3})] if gcd(3, m) == 1 else []


def _generic(q: int, m: int, e: int) -> Instance:
    return Family.GENERIC, q, m, {"exponent": e}


def _ternary_half(q: int, m: int) -> List[Instance]:
    return [_generic(q, m, (3 ** m - 3) // 2)] if m >= 2 else []


def _odd_inverse(q: int, m: int) -> List[Instance]:
    return [(Family.INVERSE, q, m, {})]


def _five_half(q: int, m: int) -> List[Instance]:
    return [_generic(q, m, (5 ** h + 1) // 2) for h in range(1, 2 * m) if gcd(2 * m, h) == 1]


def _ternary_odd(base: Callable[[int], int]) -> Callable[[int, int], List[Instance]]:
    def expand(q: int, m: int) -> List[Instance]:
        if m % 4 == 3:
            return [_generic(q, m, base(m))]
        if m % 4 == 1:
            return [_generic(q, m, base(m) + (3 ** m - 1) // 2)]
        return []
    return expand


def _zha(q: int, m: int) -> List[Instance]:
    if m % 4 != 3:
        return []
    return [_generic(q, m, (3 ** ((m + 1) // 4) - 1) * (3 ** ((m + 1) // 2) + 1))]


SWEEPS: Dict[str, Sweep] = {
    sweep.id: sweep
    for sweep in (
        Sweep("kasami-wide", "Kasami x^{2^{2h}-2^h+1} with h above the proved range", (2,),
              _kasami_wide, default_m=(5, 13)),
        Sweep("niho2", "second Niho exponent, m = 3 mod 4", (2,), _niho2, default_m=(3, 11)),
        Sweep("dobbertin", "Dobbertin exponent, m = 5i", (2,), _dobbertin, default_m=(5, 10)),
        Sweep("qh-distance", "x^{(q^3-1)/(q-1)} with the distance search", (3, 5), _qh,
              distance=True, default_m=(2, 5)),
        Sweep("cm-distance", "x^{(3^3+1)/2} with the distance search", (3,), _cm,
              distance=True, default_m=(2, 7)),
        Sweep("ternary-half", "x^{(3^m-3)/2} over GF(3^m)", (3,), _ternary_half, default_m=(2, 6)),
        Sweep("odd-inverse", "x^{q^m-2} for odd q", (3, 5, 7), _odd_inverse, default_m=(1, 4)),
        Sweep("five-half", "x^{(5^h+1)/2} over GF(5^m), gcd(2m, h) = 1", (5,), _five_half,
              default_m=(1, 4)),
        Sweep("ternary-root", "x^e with e = (3^{(m+1)/2}-1)/2 (+ (3^m-1)/2 when m = 1 mod 4)", (3,),
              _ternary_odd(lambda m: (3 ** ((m + 1) // 2) - 1) // 2), default_m=(3, 7)),
        Sweep("ternary-eighth", "x^e with e = (3^{m+1}-1)/8 (+ (3^m-1)/2 when m = 1 mod 4)", (3,),
              _ternary_odd(lambda m: (3 ** (m + 1) - 1) // 8), default_m=(3, 7)),
        Sweep("zha", "x^{(3^{(m+1)/4}-1)(3^{(m+1)/2}+1)}, m = 3 mod 4", (3,), _zha, default_m=(3, 7)),
    )
}


@dataclass
class SweepPlan:
    sweep: Sweep
    instances: List[Instance] = field(default_factory=list)
    differential: bool = False
    distance: bool = False


class SweepService:
    """Expands a sweep id over an m range and builds one row per instance"""

    def __init__(self):
        self.settings = get_settings()

    def ids(self) -> List[str]:
        return list(SWEEPS)

    def plan(self, sweep_id: str, m_range: Optional[Tuple[int, int]] = None,
             q_values: Optional[Sequence[int]] = None, differential: bool = False,
             distance: Optional[bool] = None) -> SweepPlan:
        if sweep_id not in SWEEPS:
            raise InvalidArgs(f"Unknown sweep '{sweep_id}' (choose from {', '.join(SWEEPS)})",
                              details={"sweep": sweep_id})
        sweep = SWEEPS[sweep_id]
        lo, hi = m_range if m_range is not None else sweep.default_m
        bases = tuple(q_values) if q_values else sweep.bases
        unknown = [q for q in bases if q not in sweep.bases]
        if unknown:
            raise InvalidArgs(f"Sweep '{sweep_id}' runs over q in {list(sweep.bases)}",
                              details={"q": unknown})

        cap = self.settings.SWEEP_MAX_FIELD
        too_large = [(q, m) for q in bases for m in range(lo, hi + 1) if q ** m > cap]
        if too_large:
            q, m = too_large[0]
            raise CapExceeded(
                f"Sweep field {q}^{m} exceeds SWEEP_MAX_FIELD={cap}",
                details={"sweep": sweep_id, "q": q, "m": m, "cap": cap},
            )

        instances = [inst for q in bases for m in range(max(lo, 1), hi + 1) for inst in sweep.expand(q, m)]
        instances = [inst for inst in instances if validate_params(inst[0], inst[1], inst[2], **inst[3]).valid]
        return SweepPlan(sweep=sweep, instances=instances, differential=differential,
                         distance=sweep.distance if distance is None else distance)

    def run(self, sweep_id: str, m_range: Optional[Tuple[int, int]] = None,
            q_values: Optional[Sequence[int]] = None, differential: bool = False,
            distance: Optional[bool] = None) -> List[SweepRow]:
        """Rows in instance order; an empty range gives no rows"""
        start_time = time.time()
        plan = self.plan(sweep_id, m_range, q_values, differential, distance)
        jobs = [(inst, plan.differential, plan.distance) for inst in plan.instances]
        workers = max(1, self.settings.WORKERS)
        if workers == 1 or len(jobs) < 2:
            rows = [_row(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(_row, jobs))
        logger.info(
            "Sweep finished",
            sweep=sweep_id,
            rows=len(rows),
            differential=plan.differential,
            duration_ms=int((time.time() - start_time) * 1000),
        )
        return rows


def _row(job: Tuple[Instance, bool, bool]) -> SweepRow:
    (family, q, m, params), differential, distance = job
    try:
        built = code_service.build(family, q, m, differential=differential, bounds=True,
                                   distance=distance, **params)
    except CodeConstructionError as e:
        logger.error("Sweep instance failed", family=family.value, q=q, m=m, error=str(e))
        raise
    bounds = built.bounds
    code = built.code
    row = SweepRow(
        q=q,
        m=m,
        h=params.get("h"),
        kappa=params.get("kappa"),
        family=family.value if "exponent" not in params else f"x^{params['exponent']}",
        n=code.n,
        k=code.k,
        span=built.span,
        d_lo=bounds.distance_lo,
        d_hi=bounds.distance_hi,
        generator=code.generator.to_text(),
        zero_set=format_leaders(code.zero_set),
    )
    logger.debug("Sweep row", family=row.family, q=q, m=m, n=row.n, k=row.k, span=row.span)
    return row


sweep_service = SweepService()
