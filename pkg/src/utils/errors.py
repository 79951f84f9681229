from datetime import datetime, timezone
from typing import Any, Dict, Optional


class CodeConstructionError(Exception):
    """Base error for every failure surfaced by the library"""

    code = "CODE_CONSTRUCTION_ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Render the error envelope shared by the CLI and reports"""
        return {
            "error": {
                "code": self.code,
                "message": self.message,
                "details": self.details,
                "timestamp": datetime.now(timezone.utc).isoformat(),
            }
        }


# Field construction
class UnsupportedBase(CodeConstructionError):
    code = "UNSUPPORTED_BASE"


class NotIrreducible(CodeConstructionError):
    code = "NOT_IRREDUCIBLE"


class NotPrimitive(CodeConstructionError):
    code = "NOT_PRIMITIVE"


class FieldTooLarge(CodeConstructionError):
    code = "FIELD_TOO_LARGE"


# Arithmetic
class DivisionByZero(CodeConstructionError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


class ZeroConstantTerm(CodeConstructionError):
    code = "ZERO_CONSTANT_TERM"


class NotCoprime(CodeConstructionError):
    code = "NOT_COPRIME"


class InvalidArgs(CodeConstructionError):
    code = "INVALID_ARGS"


class BaseFieldLeak(CodeConstructionError):
    """A minimal polynomial coefficient fell outside GF(q)"""

    code = "BASE_FIELD_LEAK"


# Function catalog
class NotMonomial(CodeConstructionError):
    code = "NOT_MONOMIAL"


class InvalidParams(CodeConstructionError):
    code = "INVALID_PARAMS"


class TheoremPreconditionUnmet(CodeConstructionError):
    code = "THEOREM_PRECONDITION_UNMET"


# Sequences and analysis
class PeriodMismatch(CodeConstructionError):
    code = "PERIOD_MISMATCH"


class CapExceeded(CodeConstructionError):
    code = "CAP_EXCEEDED"


class BudgetExceeded(CodeConstructionError):
    """Raised inside the distance search to unwind; callers get an interval"""

    code = "BUDGET_EXCEEDED"
