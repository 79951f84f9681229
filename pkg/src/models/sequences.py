from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from src.models.field import FieldCtx
from src.models.poly import Poly


@dataclass(frozen=True, eq=False)
class PeriodicSequence:
    """One period s_0 ... s_{L-1} of a sequence over GF(q)"""

    q: int
    terms: np.ndarray = field(repr=False)
    ctx: Optional[FieldCtx] = field(default=None, repr=False)

    def __post_init__(self):
        terms = np.asarray(self.terms, dtype=np.int64) % self.q
        terms.setflags(write=False)
        object.__setattr__(self, "terms", terms)

    @property
    def period(self) -> int:
        return int(self.terms.size)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.terms)

    def poly(self) -> Poly:
        """S(x) = s_0 + s_1 x + ... + s_{L-1} x^{L-1}"""
        return Poly.from_array(self.q, self.terms)

    def periods(self, count: int) -> np.ndarray:
        return np.tile(self.terms, count)


@dataclass(frozen=True)
class SpectralForm:
    """Expansion s_t = sum_{i in support} c_i alpha^{it}, c_i stored as field codes"""

    coefficients: Dict[int, int]

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.coefficients))

    @property
    def span(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True, eq=False)
class CyclicCode:
    """Cyclic code of length n over GF(q) given by its generator polynomial"""

    q: int
    n: int
    generator: Poly
    zero_set: Tuple[int, ...] = ()
    ctx: Optional[FieldCtx] = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return self.n - self.generator.degree

    @property
    def redundancy(self) -> int:
        return self.generator.degree

    def check_polynomial(self) -> Poly:
        """h(x) = (x^n - 1) / g(x)"""
        return Poly.x_pow_minus_one(self.q, self.n).exact_div(self.generator)

    def same_as(self, other: "CyclicCode") -> bool:
        return (self.q, self.n, self.generator) == (other.q, other.n, other.generator)
