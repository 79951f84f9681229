from pydantic import BaseModel, Field, field_validator
from typing import Dict, List, Optional, Union
from datetime import datetime, timezone


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


# Base schemas
class BaseResponse(BaseModel):
    """Base response model"""
    model_config = {"from_attributes": True}


class ErrorResponse(BaseModel):
    """Standard error response"""
    error: dict

    model_config = {
        "json_schema_extra": {
            "example": {
                "error": {
                    "code": "INVALID_PARAMS",
                    "message": "Gold exponent needs gcd(h, m) = 1 (h=2, m=6)",
                    "details": {"family": "gold", "h": 2, "m": 6},
                    "timestamp": "2025-01-01T12:00:00Z"
                }
            }
        }
    }


# Algebra schemas
class FieldSummary(BaseResponse):
    """Schema for a constructed extension field"""
    q: int
    m: int
    n: int
    modulus: List[int]
    modulus_text: str
    alpha_order: int
    trace_alpha: int


class CosetEntry(BaseResponse):
    """Schema for one cyclotomic coset"""
    leader: int
    size: int
    elements: List[int]
    rho: Optional[int] = None
    nu: Optional[int] = None


# Code schemas
class BoundReport(BaseResponse):
    """Schema for distance bounds and the measured minimum distance"""
    bch_lower: int
    bch_lower_reciprocal: int
    bch_lower_any_step: int
    even_weight_lift: bool
    square_root_lower: Optional[int] = None
    sphere_packing_upper: int
    generator_weight: int
    distance_exact: Optional[int] = None
    distance_lo: int
    distance_hi: int
    strategy: str
    all_weights_even: Optional[bool] = None

    @field_validator("distance_hi")
    @classmethod
    def validate_interval(cls, v, info):
        lo = info.data.get("distance_lo")
        if lo is not None and v < lo:
            raise ValueError("distance interval is empty")
        return v


class CodeRecord(BaseResponse):
    """Schema for a built cyclic code"""
    q: int
    m: int
    modulus: List[int]
    family: str
    params: Dict[str, Union[int, str]] = Field(default_factory=dict)
    sequence: str = "defining"
    n: int
    k: int
    generator_coeffs: List[int]
    generator: str
    zero_set_leaders: List[int]
    span: int
    predicted_span: Optional[int] = None
    predicted_match: Optional[bool] = None
    theorem_covered: bool = False
    bounds: Optional[BoundReport] = None
    dual: Optional[Dict[str, int]] = None

    model_config = {
        "json_schema_extra": {
            "example": {
                "q": 2,
                "m": 3,
                "modulus": [1, 1, 0, 1],
                "family": "inverse",
                "params": {},
                "sequence": "defining",
                "n": 7,
                "k": 3,
                "generator_coeffs": [1, 0, 1, 1, 1],
                "generator": "x^4+x^3+x^2+1",
                "zero_set_leaders": [0, 1],
                "span": 4,
                "predicted_span": 4,
                "predicted_match": True,
                "theorem_covered": True
            }
        }
    }


class DistanceReport(BaseResponse):
    """Schema for a minimum distance search"""
    q: int
    n: int
    k: int
    generator: str
    distance_lo: int
    distance_hi: int
    distance_exact: Optional[int] = None
    strategy: str
    work: int = 0
    all_weights_even: Optional[bool] = None


# Corpus schemas
class ExampleRecord(BaseModel):
    """Schema for one worked example with its expected code"""
    id: str
    q: int
    m: int
    modulus: List[int]
    family: str
    h: Optional[int] = None
    kappa: Optional[int] = None
    u: Optional[str] = None
    exponent: Optional[int] = None
    differential: bool = False
    expected_generator: Optional[List[int]] = None
    expected_n: int
    expected_k: int
    expected_d: Optional[int] = None
    expected_d_lo: Optional[int] = None
    expected_d_hi: Optional[int] = None
    expected_dual: Optional[List[int]] = None
    exploratory: bool = False
    citation: str

    @field_validator("citation")
    @classmethod
    def validate_citation(cls, v):
        """Every record names the worked example it reproduces"""
        if not v or not v.strip():
            raise ValueError("Example record needs a citation")
        return v.strip()


class ExampleResult(BaseModel):
    """Schema for the verification of one example record"""
    id: str
    passed: bool
    exploratory: bool = False
    checks: Dict[str, bool] = Field(default_factory=dict)
    messages: List[str] = Field(default_factory=list)
    record: Optional[CodeRecord] = None
    duration_ms: int = 0


class PropertyResult(BaseModel):
    """Schema for one executable property suite"""
    name: str
    passed: bool
    cases: int = 0
    failures: List[str] = Field(default_factory=list)
    duration_ms: int = 0


class RunReport(BaseModel):
    """Schema for a full verification run"""
    service: str
    version: str
    green: bool
    examples: List[ExampleResult] = Field(default_factory=list)
    properties: List[PropertyResult] = Field(default_factory=list)
    duration_ms: int = 0
    environment: dict = Field(default_factory=dict)
    timestamp: datetime = Field(default_factory=_utcnow)


class SweepRow(BaseModel):
    """Schema for one CSV row of a parameter sweep"""
    q: int
    m: int
    h: Optional[int] = None
    kappa: Optional[int] = None
    u: Optional[str] = None
    family: str
    n: int
    k: int
    span: int
    d_lo: int
    d_hi: int
    generator: str
    zero_set: str


SWEEP_COLUMNS = list(SweepRow.model_fields.keys())
