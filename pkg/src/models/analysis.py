from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from src.models.poly import Poly


class Relation(str, Enum):
    EQUAL = "equal"
    A_IN_B = "a-in-b"
    B_IN_A = "b-in-a"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class DistanceResult:
    """Minimum distance, exact when lo == hi and the search finished"""

    lo: int
    hi: int
    strategy: str
    exact: Optional[int] = None
    all_even: Optional[bool] = None
    work: int = 0
    witness: Optional[Tuple[int, ...]] = field(default=None, repr=False)

    @property
    def interval(self) -> Tuple[int, int]:
        return self.lo, self.hi


@dataclass(frozen=True)
class SubcodeReport:
    """How two cyclic codes of the same length sit inside each other"""

    relation: Relation
    extra_factor: Optional[Poly] = None
    extra_leaders: Tuple[int, ...] = ()
    dimension_gap: int = 0
    even_weight_subcode: bool = False
