from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from src.models.field import FieldElement


class Family(str, Enum):
    """Catalogued APN and planar function families"""

    INVERSE = "inverse"
    GOLD = "gold"
    KASAMI = "kasami"
    WELCH = "welch"
    NIHO1 = "niho1"
    NIHO2 = "niho2"
    DOBBERTIN = "dobbertin"
    TWO_TO_H_MINUS_ONE = "two-to-h-minus-one"
    SQUARE = "square"
    DEMBOWSKI_OSTROM = "dembowski-ostrom"
    DY_TRINOMIAL = "dy-trinomial"
    QH_GEOMETRIC = "qh-geometric"
    COULTER_MATHEWS = "coulter-mathews"
    CUBE = "cube"
    GENERIC = "generic"

    @property
    def is_monomial(self) -> bool:
        return self is not Family.DY_TRINOMIAL

    @classmethod
    def parse(cls, value: str) -> "Family":
        key = value.strip().lower().replace("_", "-")
        aliases = {
            "pow2h": cls.TWO_TO_H_MINUS_ONE,
            "do": cls.DEMBOWSKI_OSTROM,
            "cm": cls.COULTER_MATHEWS,
            "trinomial": cls.DY_TRINOMIAL,
            "qh": cls.QH_GEOMETRIC,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


BINARY_FAMILIES = frozenset({
    Family.GOLD,
    Family.KASAMI,
    Family.WELCH,
    Family.NIHO1,
    Family.NIHO2,
    Family.DOBBERTIN,
    Family.TWO_TO_H_MINUS_ONE,
})

ODD_FAMILIES = frozenset({
    Family.SQUARE,
    Family.DEMBOWSKI_OSTROM,
    Family.DY_TRINOMIAL,
    Family.QH_GEOMETRIC,
    Family.COULTER_MATHEWS,
    Family.CUBE,
})


@dataclass(frozen=True)
class FunctionSpec:
    """A family instance over GF(q^m); exponent is set for monomials"""

    family: Family
    q: int
    m: int
    h: Optional[int] = None
    kappa: Optional[int] = None
    u: Optional[FieldElement] = None
    exponent: Optional[int] = None

    @property
    def is_monomial(self) -> bool:
        return self.family.is_monomial

    def params(self) -> Dict[str, object]:
        values: Dict[str, object] = {}
        if self.h is not None:
            values["h"] = self.h
        if self.kappa is not None:
            values["kappa"] = self.kappa
        if self.u is not None:
            values["u"] = repr(self.u)
        if self.exponent is not None:
            values["exponent"] = self.exponent
        return values


@dataclass
class ValidityReport:
    """Which catalogue and theorem preconditions hold for a parameter set"""

    family: Family
    q: int
    m: int
    valid: bool
    theorem_covered: bool
    claimed_uniformity: Optional[int] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    reasons: List[str] = field(default_factory=list)

    @property
    def exploratory(self) -> bool:
        return self.valid and not self.theorem_covered


@dataclass(frozen=True)
class CatalogEntry:
    family: Family
    exponent: str
    validity: str
    theorem_range: str
    claim: str
