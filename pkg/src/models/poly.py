from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from src.utils.errors import DivisionByZero, ZeroConstantTerm


def _normalize(coeffs: Iterable[int], q: int) -> Tuple[int, ...]:
    values = [int(c) % q for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _trim(values: np.ndarray) -> np.ndarray:
    nonzero = np.flatnonzero(values)
    if nonzero.size == 0:
        return values[:0]
    return values[: nonzero[-1] + 1]


def _divmod_arrays(a: np.ndarray, b: np.ndarray, q: int) -> Tuple[np.ndarray, np.ndarray]:
    """Long division on trimmed coefficient arrays"""
    db = len(b) - 1
    if len(a) - 1 < db:
        return a[:0], a
    remainder = a.copy()
    lead_inv = pow(int(b[-1]), -1, q)
    quotient = np.zeros(len(a) - db, dtype=np.int64)
    for shift in range(len(a) - 1 - db, -1, -1):
        top = int(remainder[shift + db])
        if top == 0:
            continue
        factor = (top * lead_inv) % q
        quotient[shift] = factor
        window = remainder[shift: shift + db + 1]
        remainder[shift: shift + db + 1] = (window - factor * b) % q
    return quotient, _trim(remainder[:db])


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over GF(q), coefficients in ascending order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    q: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs, self.q))

    # Constructors
    @classmethod
    def zero(cls, q: int) -> "Poly":
        return cls(q, ())

    @classmethod
    def one(cls, q: int) -> "Poly":
        return cls(q, (1,))

    @classmethod
    def monomial(cls, q: int, degree: int, coeff: int = 1) -> "Poly":
        return cls(q, (0,) * degree + (coeff,))

    @classmethod
    def x_minus(cls, q: int, root: int) -> "Poly":
        """x - root for a base-field scalar root"""
        return cls(q, (-root, 1))

    @classmethod
    def x_pow_minus_one(cls, q: int, n: int) -> "Poly":
        """x^n - 1"""
        return cls(q, (q - 1,) + (0,) * (n - 1) + (1,))

    @classmethod
    def from_array(cls, q: int, values: np.ndarray) -> "Poly":
        return cls(q, tuple(np.asarray(values).tolist()))

    # Properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    @property
    def weight(self) -> int:
        """Number of nonzero coefficients"""
        return sum(1 for c in self.coeffs if c)

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    # Arithmetic
    def _check(self, other: "Poly"):
        if self.q != other.q:
            raise ValueError(f"Mixed base fields GF({self.q}) and GF({other.q})")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        out = np.zeros(size, dtype=np.int64)
        out[: len(self.coeffs)] += self.array()
        out[: len(other.coeffs)] += other.array()
        return Poly.from_array(self.q, out % self.q)

    def __neg__(self) -> "Poly":
        return Poly(self.q, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly(self.q, tuple(c * other for c in self.coeffs))
        self._check(other)
        if self.is_zero or other.is_zero:
            return Poly.zero(self.q)
        product = np.convolve(self.array(), other.array()) % self.q
        return Poly.from_array(self.q, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        result = Poly.one(self.q)
        base = self
        while exponent > 0:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(divisor)
        if divisor.is_zero:
            raise DivisionByZero("Polynomial division by zero")
        if self.degree < divisor.degree:
            return Poly.zero(self.q), self
        quotient, remainder = _divmod_arrays(self.array(), divisor.array(), self.q)
        return Poly.from_array(self.q, quotient), Poly.from_array(self.q, remainder)

    def __floordiv__(self, divisor: "Poly") -> "Poly":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "Poly") -> "Poly":
        return divmod(self, divisor)[1]

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient of a division that must leave no remainder"""
        quotient, remainder = divmod(self, divisor)
        if not remainder.is_zero:
            raise ArithmeticError(
                f"{divisor.to_text()} does not divide {self.to_text()}"
            )
        return quotient

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        inv = pow(self.leading, -1, self.q)
        return self * inv

    def reciprocal(self) -> "Poly":
        """Reversed coefficients made monic; roots become their inverses"""
        if self.is_zero or self.coeffs[0] == 0:
            raise ZeroConstantTerm(
                "Reciprocal needs a nonzero constant term",
                details={"poly": self.to_list()},
            )
        return Poly(self.q, tuple(reversed(self.coeffs))).monic()

    def __call__(self, value: int) -> int:
        """Evaluate at a base-field scalar"""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % self.q
        return acc

    # Text form
    def to_text(self) -> str:
        """Pretty form such as x^4+x^3+x^2+1 (descending powers)"""
        if self.is_zero:
            return "0"
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
                continue
            mono = "x" if power == 1 else f"x^{power}"
            terms.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.to_text()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor by Euclid"""
    a._check(b)
    q = a.q
    left, right = a.array(), b.array()
    # Stay on arrays; Euclid on x^n - 1 can take thousands of steps
    while right.size:
        left, right = right, _divmod_arrays(left, right, q)[1]
    return Poly.from_array(q, left).monic()


def poly_product(factors: Iterable[Poly], q: int) -> Poly:
    result = Poly.one(q)
    for factor in factors:
        result = result * factor
    return result
