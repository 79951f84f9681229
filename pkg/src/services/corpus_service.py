"""Worked-example corpus and the executable property suites behind verify-examples"""
import json
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import structlog

from src.config.moduli import get_modulus
from src.config.settings import get_settings
from src.models.analysis import Relation
from src.models.functions import Family
from src.models.poly import Poly, poly_product
from src.models.schemas import ExampleRecord, ExampleResult, PropertyResult, RunReport
from src.models.sequences import PeriodicSequence
from src.services.analysis_service import analysis_service, has_root_one, subcode_relation
from src.services.code_service import BuiltCode, code_service, exploratory_notes
from src.services.cyclotomy_service import (
    build_cosets,
    coulter_mathews_cosets_check,
    count_chains,
    count_odd_eps,
    epsilon_table,
    geometric_cosets_check,
    n_choose_chain,
    n_t_closed_form,
    shifted_window_check,
    small_cosets_check,
    welch_cosets_check,
)
from src.services.field_service import field_service, minimal_polynomial
from src.services.function_service import (
    differential_uniformity,
    geometric_h_max,
    kasami_h_max,
    make_function,
    trinomial_claim_holds,
    two_to_h_max,
    validate_params,
)
from src.services.sequence_service import sequence_service
from src.utils.errors import CodeConstructionError
from src.utils.system import environment
from src.utils.validators import ids_filter, parse_poly

logger = structlog.get_logger()


def _relation(q: int, m: int) -> str:
    modulus = Poly(q, field_service.resolve_modulus(q, m))
    return modulus.to_text().replace("x", "alpha") + "=0"


SECTIONS: Dict[Family, str] = {
    Family.INVERSE: "inverse function",
    Family.GOLD: "Gold functions",
    Family.KASAMI: "Kasami functions",
    Family.WELCH: "Welch function",
    Family.NIHO1: "first Niho function",
    Family.TWO_TO_H_MINUS_ONE: "x^{2^h-1}",
    Family.SQUARE: "planar x^2",
    Family.DEMBOWSKI_OSTROM: "Dembowski-Ostrom monomials",
    Family.DY_TRINOMIAL: "planar trinomial",
    Family.QH_GEOMETRIC: "x^{(q^h-1)/(q-1)}",
    Family.COULTER_MATHEWS: "Coulter-Mathews functions",
    Family.CUBE: "APN x^3",
    Family.GENERIC: "open problems",
}


def _example(id: str, q: int, m: int, family: Family, generator: Optional[str], n: int, k: int,
             about: str, **fields) -> ExampleRecord:
    coeffs = parse_poly(generator, q).to_list() if generator else None
    section = "differential sequences" if fields.get("differential") else SECTIONS[family]
    return ExampleRecord(
        id=id,
        q=q,
        m=m,
        modulus=field_service.resolve_modulus(q, m),
        family=family.value,
        expected_generator=coeffs,
        expected_n=n,
        expected_k=k,
        citation=f"{section}: {about}, {_relation(q, m)}",
        **fields,
    )


EXAMPLES: List[ExampleRecord] = [
    # Binary codes
    _example("inverse-m3", 2, 3, Family.INVERSE, "x^4+x^3+x^2+1", 7, 3,
             "inverse APN function, [7,3,4] code with dual [7,4,3]",
             expected_d=4, expected_dual=[7, 4, 3]),
    _example("inverse-m4", 2, 4, Family.INVERSE, "x^8+x^7+x^5+x^4+x^3+x+1", 15, 7,
             "inverse function for even m, [15,7,3] code", expected_d=3, exploratory=True),
    _example("inverse-m5", 2, 5, Family.INVERSE,
             "x^16+x^14+x^13+x^10+x^9+x^8+x^7+x^6+x^5+x^2+x+1", 31, 15,
             "inverse APN function, [31,15,8] code with dual [31,16,7]",
             expected_d=8, expected_dual=[31, 16, 7]),
    _example("gold-m3-h1", 2, 3, Family.GOLD, "x^4+x^3+x^2+1", 7, 3,
             "Gold function h=1, [7,3,4] code with dual [7,4,3]",
             h=1, expected_d=4, expected_dual=[7, 4, 3]),
    _example("gold-m5-h1", 2, 5, Family.GOLD, "x^6+x^5+x^4+1", 31, 25,
             "Gold function h=1, optimal [31,25,4] code with dual [31,6,15]",
             h=1, expected_d=4, expected_dual=[31, 6, 15]),
    _example("gold-m7-h2", 2, 7, Family.GOLD, "x^8+x^4+x+1", 127, 119,
             "Gold function h=2, optimal [127,119,4] code with dual [127,8,63]",
             h=2, expected_d=4, expected_dual=[127, 8, 63]),
    _example("welch-m3", 2, 3, Family.WELCH, "x^4+x^3+x^2+1", 7, 3,
             "Welch function, [7,3,4] code outside the proved range",
             expected_d=4, expected_dual=[7, 4, 3], exploratory=True),
    _example("welch-m5", 2, 5, Family.WELCH, "x^16+x^15+x^13+x^12+x^8+x^6+x^3+1", 31, 15,
             "Welch function, [31,15,8] code with dual [31,16,7] outside the proved range",
             expected_d=8, expected_dual=[31, 16, 7], exploratory=True),
    _example("welch-m7", 2, 7, Family.WELCH,
             "x^36+x^34+x^33+x^32+x^29+x^28+x^27+x^26+x^25+x^24+x^21+x^12+x^11+x^9+x^7+x^6+x^5+x^3+x+1",
             127, 91, "Welch function, [127,91,8] code", expected_d=8),
    _example("pow2h-m3-h2", 2, 3, Family.TWO_TO_H_MINUS_ONE, "x^4+x^3+x^2+1", 7, 3,
             "x^{2^h-1} with h=2, [7,3,4] code outside the proved range",
             h=2, expected_d=4, exploratory=True),
    _example("pow2h-m5-h2", 2, 5, Family.TWO_TO_H_MINUS_ONE, "x^6+x^5+x^4+1", 31, 25,
             "x^{2^h-1} with h=2, [31,25,4] code", h=2, expected_d=4),
    _example("pow2h-m7-h2", 2, 7, Family.TWO_TO_H_MINUS_ONE, "x^8+x^6+x^5+x^4+x^3+x^2+x+1", 127, 119,
             "x^{2^h-1} with h=2, [127,119,4] code", h=2, expected_d=4),
    _example("pow2h-m7-h3", 2, 7, Family.TWO_TO_H_MINUS_ONE,
             "x^22+x^21+x^20+x^18+x^17+x^16+x^14+x^13+x^8+x^7+x^6+x^5+x^4+1", 127, 105,
             "x^{2^h-1} with h=3, [127,105,d] code with 4 <= d <= 8",
             h=3, expected_d_lo=4, expected_d_hi=8),
    _example("niho1-m5", 2, 5, Family.NIHO1, "x^6+x^3+x^2+1", 31, 25,
             "first Niho function, [31,25,4] code outside the proved range",
             expected_d=4, exploratory=True),
    _example("niho1-m9", 2, 9, Family.NIHO1,
             "x^46+x^45+x^41+x^40+x^39+x^36+x^35+x^33+x^28+x^27+x^26+x^25+x^24+x^22+x^21+x^20"
             "+x^19+x^14+x^12+x^7+x^4+x^2+x+1",
             511, 465, "first Niho function, [511,465,d] code with d >= 6", expected_d_lo=6),
    _example("kasami-m3-h2", 2, 3, Family.KASAMI, "x^4+x^3+x^2+1", 7, 3,
             "Kasami function h=2, [7,3,4] code outside the proved range",
             h=2, expected_d=4, exploratory=True),
    _example("kasami-m5-h2", 2, 5, Family.KASAMI,
             "x^16+x^14+x^10+x^9+x^8+x^7+x^5+x^4+x^3+x^2+x+1", 31, 15,
             "Kasami function h=2, [31,15,8] code with dual [31,16,7] outside the proved range",
             h=2, expected_d=8, expected_dual=[31, 16, 7], exploratory=True),
    _example("kasami-m7-h2", 2, 7, Family.KASAMI,
             "x^36+x^28+x^27+x^23+x^21+x^20+x^18+x^13+x^12+x^9+x^7+x^6+x^5+1", 127, 91,
             "Kasami function h=2, [127,91,8] code outside the proved range",
             h=2, expected_d=8, exploratory=True),
    # Planar and APN functions in odd characteristic
    _example("square-q3-m2", 3, 2, Family.SQUARE, "x^5+2x^3+x^2+x+1", 8, 3,
             "planar x^2 over GF(9), [8,3,5] code", expected_d=5),
    _example("square-q3-m3", 3, 3, Family.SQUARE, "x^6+x^5+x^3+2x+2", 26, 20,
             "planar x^2 over GF(27), [26,20,4] code", expected_d=4),
    _example("square-q3-m4", 3, 4, Family.SQUARE, "x^9+2x^8+x^7+2x^6+x^4+x^2+1", 80, 71,
             "planar x^2 over GF(81), [80,71,5] code", expected_d=5),
    _example("square-q5-m2", 5, 2, Family.SQUARE, "x^5+3x^4+2x^3+3x^2+3x+3", 24, 19,
             "planar x^2 over GF(25), [24,19,4] code", expected_d=4),
    _example("square-q5-m3", 5, 3, Family.SQUARE, "x^7+4x^6+4x^4+3x^2+3", 124, 117,
             "planar x^2 over GF(125), [124,117,4] code", expected_d=4),
    # Printed with constant term 1; the code of x^4 over this modulus ends in 2x+2
    _example("do-q3-m3-k1", 3, 3, Family.DEMBOWSKI_OSTROM, "x^6+2x^5+2x^4+x^3+x^2+2x+2", 26, 20,
             "planar x^{q^kappa+1} with kappa=1, [26,20,4] code", kappa=1, expected_d=4),
    _example("do-q3-m4-k4", 3, 4, Family.DEMBOWSKI_OSTROM, "x^9+2x^8+x^7+2x^6+x^4+x^2+1", 80, 71,
             "planar x^{q^kappa+1} with kappa=4, [80,71,5] code outside the proved range",
             kappa=4, expected_d=5, exploratory=True),
    _example("dy-u1", 3, 3, Family.DY_TRINOMIAL, "x^9+x^8+2x^7+2x^6+2x^5+x^4+x^3+x^2+2x+1", 26, 17,
             "planar trinomial with u=1, optimal [26,17,5] code", u="1", expected_d=5),
    _example("dy-u-minus1", 3, 3, Family.DY_TRINOMIAL, "x^6+2x^5+2x^4+x^3+x^2+2x+2", 26, 20,
             "planar trinomial with u=-1, [26,20,4] code", u="-1", expected_d=4),
    _example("dy-u-alpha", 3, 3, Family.DY_TRINOMIAL, "x^10+x^8+2x^5+x^2+2x+2", 26, 16,
             "planar trinomial with u=alpha, [26,16,6] code", u="alpha", expected_d=6),
    _example("qh-q3-m2-h3", 3, 2, Family.QH_GEOMETRIC, "x^6+2x^5+2x^4+2x^2+x+1", 8, 2,
             "x^{(q^h-1)/(q-1)} with h=3, [8,2,6] code outside the proved range",
             h=3, expected_d=6, exploratory=True),
    _example("qh-q3-m3-h3", 3, 3, Family.QH_GEOMETRIC, "1", 26, 26,
             "x^{(q^h-1)/(q-1)} with h=3, trivial [26,26,1] code",
             h=3, expected_d=1, exploratory=True),
    _example("qh-q3-m4-h3", 3, 4, Family.QH_GEOMETRIC,
             "x^11+2x^8+2x^6+2x^5+2x^4+x^3+2x^2+x+2", 80, 69,
             "x^{(q^h-1)/(q-1)} with h=3, [80,69,5] code outside the proved range",
             h=3, expected_d=5, exploratory=True),
    _example("qh-q3-m5-h3", 3, 5, Family.QH_GEOMETRIC,
             "x^16+2x^14+2x^12+2x^11+x^10+x^9+x^6+x^3+2x^2+2", 242, 226,
             "x^{(q^h-1)/(q-1)} with h=3, [242,226,d] code outside the proved range",
             h=3, exploratory=True),
    _example("qh-q3-m6-h3", 3, 6, Family.QH_GEOMETRIC,
             "x^18+2x^15+2x^14+2x^13+2x^11+x^10+2x^9+x^8+x^6+2x^4+x^3+x^2+2", 728, 710,
             "x^{(q^h-1)/(q-1)} with h=3, [728,710,d] code", h=3),
    _example("qh-q5-m2-h3", 5, 2, Family.QH_GEOMETRIC, "x^8+x^7+2x^4+2x^3+3x^2+4x+2", 24, 16,
             "x^{(q^h-1)/(q-1)} with h=3 over GF(25), [24,16,5] code outside the proved range",
             h=3, expected_d=5, exploratory=True),
    _example("qh-q5-m6-h3", 5, 6, Family.QH_GEOMETRIC,
             "x^25+x^24+3x^23+2x^22+3x^21+x^20+2x^19+4x^18+4x^17+x^16+2x^14+4x^12+2x^11+3x^10"
             "+4x^8+4x^6+4x^5+x^4+4x^3+x^2+4",
             15624, 15599, "x^{(q^h-1)/(q-1)} with h=3 over GF(5^6), [15624,15599,d] code", h=3),
    _example("cm-m2-h3", 3, 2, Family.COULTER_MATHEWS, "x^5+2x^3+x^2+x+1", 8, 3,
             "Coulter-Mathews x^{(3^h+1)/2} with h=3, [8,3,5] code outside the proved range",
             h=3, expected_d=5, exploratory=True),
    # Printed as a copy of qh-q3-m4-h3; x^14 over GF(81) gives [80,53]
    # and only n, k and a lower bound are checked
    _example("cm-m4-h3", 3, 4, Family.COULTER_MATHEWS, None, 80, 53,
             "Coulter-Mathews x^{(3^h+1)/2} with h=3, [80,53,d] code outside the proved range",
             h=3, expected_d_lo=5, exploratory=True),
    _example("cm-m7-h3", 3, 7, Family.COULTER_MATHEWS,
             "x^50+x^49+x^48+2x^47+2x^46+x^45+2x^44+2x^43+x^42+x^41+2x^40+2x^39+2x^38+2x^37+x^36"
             "+2x^35+2x^34+2x^33+x^31+2x^30+x^29+2x^28+2x^27+2x^26+2x^25+x^24+x^23+x^22+2x^21"
             "+2x^20+x^18+x^16+x^15+x^14+x^13+2x^12+x^11+2x^10+2x^9+2x^4+1",
             2186, 2136, "Coulter-Mathews x^{(3^h+1)/2} with h=3, [2186,2136,d] code over GF(3)", h=3),
    _example("cube-q5-m2", 5, 2, Family.CUBE, "x^7+3x^6+4x^5+4x^4+2x^3+4x^2+x+1", 24, 17,
             "APN x^3 over GF(25), [24,17,5] code", expected_d=5),
    _example("cube-q5-m3", 5, 3, Family.CUBE, "x^10+x^9+x^5+3x^4+4x^3+x+4", 124, 114,
             "APN x^3 over GF(125), [124,114,5] code", expected_d=5),
    _example("ternary-half-m3", 3, 3, Family.GENERIC, "x^6+2x^5+2x^4+x^3+x^2+2x+2", 26, 20,
             "APN x^{(3^m-3)/2}, optimal [26,20,4] code", exponent=12, expected_d=4, exploratory=True),
    _example("ternary-half-m4", 3, 4, Family.GENERIC,
             "x^11+2x^8+2x^6+2x^5+2x^4+x^3+2x^2+x+2", 80, 69,
             "APN x^{(3^m-3)/2}, [80,69,5] code", exponent=39, expected_d=5, exploratory=True),
    # Differential sequences
    _example("welch-diff-m3", 2, 3, Family.WELCH, "x+1", 7, 6,
             "differential sequence of the Welch function, [7,6,2] code",
             differential=True, expected_d=2, exploratory=True),
    _example("welch-diff-m5", 2, 5, Family.WELCH, "x^11+x^9+x^8+x^7+x^2+1", 31, 20,
             "differential sequence of the Welch function, optimal [31,20,6] code",
             differential=True, expected_d=6, exploratory=True),
    # The printed degree-37 generator contradicts [127,98]; only n, k and d are checked
    _example("welch-diff-m7", 2, 7, Family.WELCH, None, 127, 98,
             "differential sequence of the Welch function, [127,98,8] code",
             differential=True, expected_d=8),
]


def lint_corpus(records: Iterable[ExampleRecord]) -> List[str]:
    """Problems that make a record unusable; an empty list means the corpus is clean"""
    problems = []
    seen = set()
    for record in records:
        label = record.id
        if record.id in seen:
            problems.append(f"{label}: duplicate id")
        seen.add(record.id)
        section, _, about = record.citation.partition(":")
        if not section.strip() or not about.strip():
            problems.append(f"{label}: citation names no section")
        pinned = get_modulus(record.q, record.m)
        if pinned is not None and list(record.modulus) != pinned:
            problems.append(f"{label}: modulus {record.modulus} does not match the embedded table {pinned}")
        if record.expected_n != record.q ** record.m - 1:
            problems.append(f"{label}: n={record.expected_n} is not q^m-1")
        if not 0 <= record.expected_k <= record.expected_n:
            problems.append(f"{label}: k={record.expected_k} out of range")
        if record.expected_generator is not None:
            degree = len(record.expected_generator) - 1
            if degree != record.expected_n - record.expected_k:
                problems.append(f"{label}: generator degree {degree} contradicts [n,k]")
        lo, hi = record.expected_d_lo, record.expected_d_hi
        if lo is not None and hi is not None and lo > hi:
            problems.append(f"{label}: empty distance interval")
        try:
            Family.parse(record.family)
        except ValueError:
            problems.append(f"{label}: unknown family {record.family}")
    return problems


def load_records(path: str) -> List[ExampleRecord]:
    """Extra records from a JSON list of ExampleRecord objects"""
    raw = json.loads(Path(path).read_text())
    return [ExampleRecord.model_validate(item) for item in raw]


def _elapsed_ms(start_time: float) -> int:
    return int((time.time() - start_time) * 1000)


def _distance_check(record: ExampleRecord, lo: int, hi: int) -> Tuple[bool, str]:
    if record.expected_d is not None:
        ok = lo <= record.expected_d <= hi
        return ok, f"d in [{lo},{hi}], expected {record.expected_d}"
    # A claimed interval has to be certified, not merely touched
    want_lo = record.expected_d_lo if record.expected_d_lo is not None else 1
    want_hi = record.expected_d_hi if record.expected_d_hi is not None else record.expected_n + 1
    ok = lo >= want_lo and hi <= want_hi
    return ok, f"d in [{lo},{hi}], expected [{want_lo},{want_hi}]"


class CorpusService:
    """Rebuilds every worked example and runs the property suites"""

    def __init__(self):
        self.settings = get_settings()

    def records(self, pattern: Optional[str] = None,
                extra: Optional[List[ExampleRecord]] = None) -> List[ExampleRecord]:
        records = EXAMPLES + list(extra or [])
        skip = set(self.settings.corpus_skip_ids)
        wanted = set(ids_filter([r.id for r in records], pattern))
        return [r for r in records if r.id in wanted and r.id not in skip]

    def verify_record(self, record: ExampleRecord, max_work: Optional[int] = None) -> ExampleResult:
        start_time = time.time()
        max_work = max_work if max_work is not None else self.settings.CORPUS_MAX_WORK
        checks: Dict[str, bool] = {}
        messages: List[str] = []
        wants_distance = any(v is not None for v in
                             (record.expected_d, record.expected_d_lo, record.expected_d_hi))
        try:
            built = code_service.build(
                Family.parse(record.family), record.q, record.m,
                h=record.h, kappa=record.kappa, u=record.u, exponent=record.exponent,
                modulus=record.modulus, differential=record.differential,
                bounds=True, distance=wants_distance, dual=record.expected_dual is not None,
                max_work=max_work,
            )
        except CodeConstructionError as e:
            logger.error("Example failed to build", id=record.id, error=str(e))
            return ExampleResult(id=record.id, passed=False, exploratory=record.exploratory,
                                 checks={"build": False}, messages=[f"{e.code}: {e.message}"],
                                 duration_ms=_elapsed_ms(start_time))

        code = built.code
        checks["exploratory-flag"] = built.validity.exploratory == record.exploratory
        checks["n"] = code.n == record.expected_n
        checks["k"] = code.k == record.expected_k
        if record.expected_generator is not None:
            checks["generator"] = code.generator.to_list() == list(record.expected_generator)
            if not checks["generator"]:
                messages.append(f"generator {code.generator.to_text()}")
        if built.predicted is not None:
            checks["prediction"] = bool(built.predicted_match)
        else:
            messages.extend(exploratory_notes(built.validity))
        checks["structure"] = (code.generator * code.check_polynomial()) == Poly.x_pow_minus_one(code.q, code.n)

        bounds = built.bounds
        if wants_distance and bounds is not None:
            checks["distance"], note = _distance_check(record, bounds.distance_lo, bounds.distance_hi)
            messages.append(note)
            if bounds.distance_exact is not None:
                checks["sphere-packing"] = bounds.distance_exact <= bounds.sphere_packing_upper
            if code.q == 2 and has_root_one(code) and bounds.all_weights_even is not None:
                checks["even-weights"] = bounds.all_weights_even
        if record.expected_dual is not None and built.dual is not None:
            n, k, d = record.expected_dual
            dual_bounds = built.dual_bounds
            ok = (built.dual.n, built.dual.k) == (n, k)
            if dual_bounds is not None:
                ok = ok and dual_bounds.distance_lo <= d <= dual_bounds.distance_hi
            checks["dual"] = ok

        result = ExampleResult(
            id=record.id,
            passed=all(checks.values()),
            exploratory=record.exploratory,
            checks=checks,
            messages=messages,
            record=code_service.record(built),
            duration_ms=_elapsed_ms(start_time),
        )
        log = logger.info if result.passed else logger.warning
        log("Example verified", id=record.id, passed=result.passed,
            failed=[name for name, ok in checks.items() if not ok],
            duration_ms=result.duration_ms)
        return result

    def verify_records(self, records: List[ExampleRecord]) -> List[ExampleResult]:
        workers = max(1, self.settings.WORKERS)
        if workers == 1 or len(records) < 2:
            return [self.verify_record(r) for r in records]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_verify_one, records))

    def run(self, pattern: Optional[str] = None, suites: Optional[List[str]] = None,
            extra: Optional[List[ExampleRecord]] = None) -> RunReport:
        """Verify the selected records and property suites; green iff every one passes"""
        start_time = time.time()
        records = self.records(pattern, extra)
        problems = lint_corpus(records)
        results = self.verify_records(records)
        properties: List[PropertyResult] = []
        if problems:
            properties.append(PropertyResult(name="corpus-lint", passed=False,
                                             cases=len(records), failures=problems))
        names = suites if suites is not None else list(QUICK_SUITES)
        for name in names:
            properties.append(self.run_suite(name, records))

        env = environment()
        env["fields"] = sorted({f"{r.q}^{r.m}" for r in records})
        report = RunReport(
            service=self.settings.SERVICE_NAME,
            version=self.settings.VERSION,
            green=all(r.passed for r in results) and all(p.passed for p in properties),
            examples=results,
            properties=properties,
            duration_ms=_elapsed_ms(start_time),
            environment=env,
        )
        logger.info("Verification run", green=report.green, examples=len(results),
                    properties=len(properties), duration_ms=report.duration_ms)
        return report

    def run_suite(self, name: str, records: Optional[List[ExampleRecord]] = None) -> PropertyResult:
        if name not in SUITES:
            raise KeyError(name)
        start_time = time.time()
        failures: List[str] = []
        try:
            cases = SUITES[name](failures, records if records is not None else EXAMPLES)
        except CodeConstructionError as e:
            logger.error("Property suite aborted", suite=name, error=str(e))
            failures.append(f"{e.code}: {e.message}")
            cases = 0
        result = PropertyResult(name=name, passed=not failures, cases=cases,
                                failures=failures[:50], duration_ms=_elapsed_ms(start_time))
        logger.info("Property suite", suite=name, passed=result.passed, cases=cases,
                    duration_ms=result.duration_ms)
        return result


def _verify_one(record: ExampleRecord) -> ExampleResult:
    return corpus_service.verify_record(record)


# Property suites; each appends failure strings and returns the number of cases
def combinatorics_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    cases = 0
    for t in range(1, 13):
        cases += 1
        if count_odd_eps(t) != n_t_closed_form(t):
            failures.append(f"N_{t}: count {count_odd_eps(t)} != closed form {n_t_closed_form(t)}")
        table = epsilon_table(t)
        covered = sorted(b for block in table.b_sets.values() for b in block)
        if covered != list(range(1, table.T + 1)):
            failures.append(f"t={t}: B sets do not partition [1, {table.T}]")
        if t < 12:
            grown = epsilon_table(t + 1)
            for a, block in table.b_sets.items():
                if grown.b_sets[a] != block + (a * 2 ** table.epsilon[a],):
                    failures.append(f"t={t}: B_{a} growth rule fails")
    for J in range(1, 13):
        for t in range(1, J + 1):
            cases += 1
            if n_choose_chain(J, t) != count_chains(J, t):
                failures.append(f"N({J},{t}) recursion disagrees with tuple count")
    return cases


def _lemma_fields(limit: int) -> Iterable[Tuple[int, int]]:
    for q in (2, 3, 5, 7):
        m = 1
        while q ** m <= limit:
            yield q, m
            m += 1


def coset_lemmas_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    limit = get_settings().SWEEP_MAX_FIELD
    cases = 0
    checks = []
    for q, m in _lemma_fields(limit):
        table = build_cosets(q, q ** m - 1)
        if q == 2:
            if m >= 7 and m % 2:
                checks.append(welch_cosets_check(table, m))
            for h in range(1, two_to_h_max(m) + 1):
                checks.append(small_cosets_check(table, m, h))
            if m >= 9 and m % 4 == 1:
                h = (m - 1) // 4
                checks.append(shifted_window_check(table, m, h, 2 ** (2 * h)))
            for h in range(2, kasami_h_max(m) + 1):
                if validate_params(Family.KASAMI, 2, m, h=h).valid:
                    checks.append(shifted_window_check(table, m, h, 2 ** (m - h)))
        else:
            for h in range(3, geometric_h_max(m) + 1):
                checks.append(geometric_cosets_check(table, q, m, h))
                if q == 3 and validate_params(Family.COULTER_MATHEWS, 3, m, h=h).valid:
                    checks.append(coulter_mathews_cosets_check(table, m, h))
    for check in checks:
        cases += 1
        if not check.holds:
            failures.append(f"{check.name} ({check.detail})")
    return cases


def _random_sequences(count: int) -> Iterable[PeriodicSequence]:
    rng = np.random.default_rng(20240101)
    for q, m in ((2, 3), (3, 3), (2, 5), (5, 3)):
        ctx = field_service.build_field(q, m)
        for _ in range(count):
            yield PeriodicSequence(q=q, terms=rng.integers(0, q, size=ctx.n), ctx=ctx)


def _oracle_case(s: PeriodicSequence, label: str, failures: List[str]):
    gcd_poly, gcd_span = sequence_service.minimal_poly_gcd(s)
    bm_span, connection = sequence_service.berlekamp_massey(s)
    spans = {"gcd": gcd_span, "bm": bm_span}
    same = bm_span == 0 or connection.monic() == gcd_poly
    if s.ctx is not None and s.period <= get_settings().SPECTRAL_MAX_PERIOD:
        _, spectral_poly, spectral_span = sequence_service.minimal_poly_spectral(s)
        spans["spectral"] = spectral_span
        same = same and spectral_poly == gcd_poly
    if len(set(spans.values())) != 1 or not same:
        failures.append(f"{label}: spans {spans}")


def oracle_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    cases = 0
    for record in records:
        built = _sequence_for(record)
        if built is None:
            continue
        cases += 1
        _oracle_case(built, record.id, failures)
    for index, s in enumerate(_random_sequences(200)):
        cases += 1
        _oracle_case(s, f"random-{s.q}-{s.period}-{index}", failures)
    return cases


def _sequence_for(record: ExampleRecord) -> Optional[PeriodicSequence]:
    try:
        f = code_service.make(Family.parse(record.family), record.q, record.m, h=record.h,
                              kappa=record.kappa, u=record.u, exponent=record.exponent,
                              modulus=record.modulus)
    except CodeConstructionError:
        return None
    ctx = field_service.build_field(record.q, record.m, record.modulus)
    if record.differential:
        return sequence_service.differential_sequence(f, ctx)
    return sequence_service.defining_sequence(f, ctx)


def structural_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    cases = 0
    factored = set()
    for record in records:
        s = _sequence_for(record)
        if s is None:
            continue
        code = sequence_service.code_from_sequence(s)
        cases += 1
        if code.generator * code.check_polynomial() != Poly.x_pow_minus_one(code.q, code.n):
            failures.append(f"{record.id}: g*h != x^n-1")
        ctx = s.ctx
        if ctx.n <= 4096 and (ctx.q, ctx.m) not in factored:
            factored.add((ctx.q, ctx.m))
            cases += 1
            table = build_cosets(ctx.q, ctx.n)
            product = poly_product((minimal_polynomial(j, ctx) for j in table.leaders), ctx.q)
            if product != Poly.x_pow_minus_one(ctx.q, ctx.n):
                failures.append(f"{record.id}: minimal polynomials do not factor x^n-1")
    return cases


# (q^m, e mod n) where the defining and differential codes of x^e coincide
EQUAL_SUBCODES = {(27, 13)}


def subcode_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    """Defining and differential codes of x^e differ by exactly m_{alpha^{-e}}.

    Holds for every monomial record in every characteristic except x^13 over
    GF(27), where the two codes are equal.
    """
    limit = get_settings().SPECTRAL_MAX_PERIOD
    cases = 0
    for record in records:
        if record.differential or not Family.parse(record.family).is_monomial:
            continue
        n = record.q ** record.m - 1
        if n > limit:
            continue
        f = code_service.make(Family.parse(record.family), record.q, record.m, h=record.h,
                              kappa=record.kappa, exponent=record.exponent, modulus=record.modulus)
        e = f.exponent % n
        if e == 0:
            continue
        ctx = field_service.build_field(record.q, record.m, record.modulus)
        a = sequence_service.code_from_sequence(sequence_service.defining_sequence(f, ctx))
        b = sequence_service.code_from_sequence(sequence_service.differential_sequence(f, ctx))
        report = subcode_relation(a, b)
        cases += 1
        if (n + 1, e) in EQUAL_SUBCODES:
            if report.relation is not Relation.EQUAL:
                failures.append(f"{record.id}: {report.relation.value}, expected equal codes")
            continue
        extra = minimal_polynomial(-e, ctx)
        if report.extra_factor != extra or report.dimension_gap != extra.degree:
            failures.append(f"{record.id}: {report.relation.value}, gap {report.dimension_gap}")
    return cases


def _span_instances(limit: int) -> Iterable[Tuple[Family, int, int, dict]]:
    for m in range(2, 15):
        if 2 ** m > limit:
            break
        yield Family.INVERSE, 2, m, {}
        yield Family.WELCH, 2, m, {}
        yield Family.NIHO1, 2, m, {}
        for h in range(1, m):
            yield Family.GOLD, 2, m, {"h": h}
            yield Family.KASAMI, 2, m, {"h": h}
            yield Family.TWO_TO_H_MINUS_ONE, 2, m, {"h": h}
    for q in (3, 5, 7, 11, 13):
        for m in range(1, 15):
            if q ** m > limit:
                break
            yield Family.SQUARE, q, m, {}
            yield Family.CUBE, q, m, {}
            for kappa in range(0, m):
                yield Family.DEMBOWSKI_OSTROM, q, m, {"kappa": kappa}
            for h in range(3, m + 1):
                yield Family.QH_GEOMETRIC, q, m, {"h": h}
                if q == 3:
                    yield Family.COULTER_MATHEWS, q, m, {"h": h}


def span_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    """Measured span and generator equal the closed forms inside every proved range"""
    limit = get_settings().SWEEP_MAX_FIELD
    cases = 0
    for family, q, m, params in _span_instances(limit):
        if not validate_params(family, q, m, **params).theorem_covered:
            continue
        differential_too = family in (Family.WELCH, Family.SQUARE, Family.DEMBOWSKI_OSTROM)
        for differential in (False, True) if differential_too else (False,):
            cases += 1
            _span_case(failures, family, q, m, params, differential)
    for m in range(3, 15, 2):
        if 3 ** m > limit:
            break
        ctx = field_service.build_field(3, m)
        for u in ("1", "-1", "alpha", "alpha^2", "alpha^5"):
            cases += 1
            _span_case(failures, Family.DY_TRINOMIAL, 3, m, {"u": u}, False, ctx.modulus.to_list())
    return cases


def _span_case(failures: List[str], family: Family, q: int, m: int, params: dict,
               differential: bool, modulus=None):
    built: BuiltCode = code_service.build(family, q, m, modulus=modulus, differential=differential,
                                          bounds=False, **params)
    if built.predicted_match is not True:
        failures.append(
            f"{family.value} q={q} m={m} {params} differential={differential}: "
            f"span {built.span} predicted {built.predicted_span}"
        )


def uniformity_suite(failures: List[str], records: List[ExampleRecord]) -> int:
    limit = get_settings().UNIFORMITY_MAX_FIELD
    cases = 0
    for family, q, m, params in _span_instances(limit):
        report = validate_params(family, q, m, **params)
        if not report.valid or report.claimed_uniformity is None:
            continue
        ctx = field_service.build_field(q, m)
        f = make_function(family, q, m, **params)
        cases += 1
        value = differential_uniformity(f, ctx)
        if value != report.claimed_uniformity:
            failures.append(f"{family.value} q={q} m={m} {params}: uniformity {value}")
    for m in range(1, 8, 2):
        ctx = field_service.build_field(3, m)
        cases += 1
        if not trinomial_claim_holds(ctx):
            failures.append(f"u^2+u-1 vanishes somewhere in GF(3^{m})")
        if 3 <= m <= 5:
            u = ctx.alpha()
            f = make_function(Family.DY_TRINOMIAL, 3, m, u=u)
            cases += 1
            if differential_uniformity(f, ctx) != 1:
                failures.append(f"trinomial u=alpha over GF(3^{m}) is not planar")
    return cases


SUITES: Dict[str, Callable[[List[str], List[ExampleRecord]], int]] = {
    "combinatorics": combinatorics_suite,
    "coset-lemmas": coset_lemmas_suite,
    "span-oracle": oracle_suite,
    "structure": structural_suite,
    "subcodes": subcode_suite,
    "span-formulas": span_suite,
    "uniformity": uniformity_suite,
}

QUICK_SUITES = ("combinatorics", "coset-lemmas", "span-oracle", "structure", "subcodes")

corpus_service = CorpusService()
