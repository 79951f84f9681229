import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Union

import structlog

from src.config.settings import get_settings
from src.models.field import FieldCtx, FieldElement
from src.models.functions import Family, FunctionSpec, ValidityReport
from src.models.poly import Poly
from src.models.schemas import BoundReport, CodeRecord
from src.models.sequences import CyclicCode, PeriodicSequence
from src.services.analysis_service import analysis_service, dual_code
from src.services.field_service import field_service
from src.services.function_service import make_function, validate_params
from src.services.prediction_service import DIFFERENTIAL_FAMILIES, predicted_generator, predicted_span
from src.services.sequence_service import sequence_service
from src.utils.errors import TheoremPreconditionUnmet
from src.utils.validators import parse_element

logger = structlog.get_logger()


@dataclass
class BuiltCode:
    """Everything produced on the way from a function to its cyclic code"""

    ctx: FieldCtx
    function: FunctionSpec
    validity: ValidityReport
    sequence: PeriodicSequence
    code: CyclicCode
    span: int
    differential: bool = False
    predicted: Optional[Poly] = None
    predicted_span: Optional[int] = None
    bounds: Optional[BoundReport] = None
    dual: Optional[CyclicCode] = None
    dual_bounds: Optional[BoundReport] = None

    @property
    def predicted_match(self) -> Optional[bool]:
        if self.predicted is None:
            return None
        return self.predicted == self.code.generator and self.predicted_span == self.span


class CodeService:
    """Builds the code of a catalogued function end to end"""

    def __init__(self):
        self.settings = get_settings()

    def make(self, family: Family, q: int, m: int, h: Optional[int] = None,
             kappa: Optional[int] = None, u: Optional[Union[str, FieldElement]] = None,
             exponent: Optional[int] = None,
             modulus: Optional[Sequence[int]] = None) -> FunctionSpec:
        ctx = field_service.build_field(q, m, modulus)
        if isinstance(u, str):
            u = parse_element(u, ctx)
        return make_function(family, q, m, h=h, kappa=kappa, u=u, exponent=exponent)

    def build(self, family: Family, q: int, m: int, h: Optional[int] = None,
              kappa: Optional[int] = None, u: Optional[Union[str, FieldElement]] = None,
              exponent: Optional[int] = None, modulus: Optional[Sequence[int]] = None,
              differential: bool = False, bounds: bool = True, distance: bool = True,
              dual: bool = False, max_work: Optional[int] = None,
              max_weight: Optional[int] = None,
              max_seconds: Optional[float] = None) -> BuiltCode:
        start_time = time.time()
        ctx = field_service.build_field(q, m, modulus)
        f = self.make(family, q, m, h=h, kappa=kappa, u=u, exponent=exponent,
                      modulus=ctx.modulus.to_list())
        validity = validate_params(family, q, m, h=h, kappa=kappa, u=f.u, exponent=f.exponent)

        if differential:
            sequence = sequence_service.differential_sequence(f, ctx)
        else:
            sequence = sequence_service.defining_sequence(f, ctx)
        code = sequence_service.code_from_sequence(sequence)
        built = BuiltCode(ctx=ctx, function=f, validity=validity, sequence=sequence,
                          code=code, span=code.generator.degree,
                          differential=differential)

        if validity.theorem_covered and (not differential or family in DIFFERENTIAL_FAMILIES):
            try:
                built.predicted = predicted_generator(f, ctx, differential=differential)
                built.predicted_span = predicted_span(f, ctx, differential=differential)
            except TheoremPreconditionUnmet as e:
                logger.debug("No prediction", family=family.value, error=str(e))

        budget = dict(max_work=max_work, max_weight=max_weight, max_seconds=max_seconds)
        if bounds:
            built.bounds = analysis_service.bound_report(
                code, with_distance=distance,
                square_root=family is Family.INVERSE and q == 2 and m % 2 == 1, **budget)
        if dual:
            built.dual = dual_code(code)
            built.dual_bounds = analysis_service.bound_report(built.dual, with_distance=distance, **budget)

        if built.predicted_match is False:
            logger.warning(
                "Prediction mismatch",
                family=family.value,
                q=q,
                m=m,
                span=built.span,
                predicted_span=built.predicted_span,
            )
        logger.info(
            "Code built",
            family=family.value,
            q=q,
            m=m,
            n=code.n,
            k=code.k,
            differential=differential,
            duration_ms=int((time.time() - start_time) * 1000),
        )
        return built

    def record(self, built: BuiltCode) -> CodeRecord:
        f, code, ctx = built.function, built.code, built.ctx
        params: Dict[str, Union[int, str]] = {
            key: (value if isinstance(value, int) else str(value))
            for key, value in f.params().items()
        }
        dual = None
        if built.dual is not None:
            dual = {"n": built.dual.n, "k": built.dual.k}
            if built.dual_bounds is not None:
                dual["d_lo"] = built.dual_bounds.distance_lo
                dual["d_hi"] = built.dual_bounds.distance_hi
        return CodeRecord(
            q=ctx.q,
            m=ctx.m,
            modulus=ctx.modulus.to_list(),
            family=f.family.value,
            params=params,
            sequence="differential" if built.differential else "defining",
            n=code.n,
            k=code.k,
            generator_coeffs=code.generator.to_list(),
            generator=code.generator.to_text(),
            zero_set_leaders=list(code.zero_set),
            span=built.span,
            predicted_span=built.predicted_span,
            predicted_match=built.predicted_match,
            theorem_covered=built.validity.theorem_covered,
            bounds=built.bounds,
            dual=dual,
        )


def exploratory_notes(validity: ValidityReport) -> List[str]:
    if validity.theorem_covered:
        return []
    return ["theorem not applicable"] + list(validity.reasons)


code_service = CodeService()
