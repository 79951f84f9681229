from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from src.models.poly import Poly
from src.utils.errors import DivisionByZero

ArrayLike = Union[int, np.ndarray]


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(q^m) with x mod modulus as the primitive element alpha.

    Elements are integer codes sum(d_i * q^i) of their coordinate vectors
    (d_0, ..., d_{m-1}) in the basis 1, alpha, ..., alpha^{m-1}; codes below q
    are the base-field scalars. ``exp[i]`` is the code of alpha^i and
    ``log[code]`` its exponent, with ``log[0] == -1``.
    """

    q: int
    m: int
    modulus: Poly
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    basis_traces: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.q ** self.m - 1

    @property
    def order(self) -> int:
        return self.q ** self.m

    @property
    def weights(self) -> np.ndarray:
        return self.q ** np.arange(self.m, dtype=np.int64)

    # Element constructors
    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, int(code) % self.order)

    def alpha(self, k: int = 1) -> "FieldElement":
        return FieldElement(self, int(self.exp[k % self.n]))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # Vector form
    def digits(self, codes: ArrayLike) -> np.ndarray:
        return (np.asarray(codes, dtype=np.int64)[..., None] // self.weights) % self.q

    def from_digits(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.q) @ self.weights

    # Vectorised arithmetic on codes
    def add(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        if self.q == 2:
            return np.bitwise_xor(a, b)
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a: ArrayLike) -> np.ndarray:
        if self.q == 2:
            return np.asarray(a, dtype=np.int64)
        return self.from_digits(-self.digits(a))

    def sub(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        if self.q == 2:
            return np.bitwise_xor(a, b)
        return self.from_digits(self.digits(a) - self.digits(b))

    def scale(self, c: int, a: ArrayLike) -> np.ndarray:
        """Multiply by a base-field scalar"""
        return self.from_digits(self.digits(a) * (c % self.q))

    def mul(self, a: ArrayLike, b: ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        product = self.exp[(self.log[a] + self.log[b]) % self.n]
        return np.where((a == 0) | (b == 0), 0, product)

    def inv(self, a: ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("Zero has no inverse in GF(%d^%d)" % (self.q, self.m))
        return self.exp[(-self.log[a]) % self.n]

    def power(self, a: ArrayLike, e: int) -> np.ndarray:
        """a^e with 0^0 = 1 and 0^e = 0 for e > 0"""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.power(self.inv(a), -e)
        result = self.exp[(self.log[a] * (e % self.n)) % self.n]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, result)

    def frobenius(self, a: ArrayLike, times: int = 1) -> np.ndarray:
        return self.power(a, self.q ** (times % self.m))

    def trace(self, a: ArrayLike) -> np.ndarray:
        """Tr(a) as base-field scalars, linear in the coordinate vector"""
        return (self.digits(a) @ self.basis_traces) % self.q


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldCtx, stored by code"""

    ctx: FieldCtx
    code: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("Operands belong to different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ctx.q
        return NotImplemented

    def _wrap(self, code) -> "FieldElement":
        return FieldElement(self.ctx, int(code))

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.ctx.sub(b, self.code))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.ctx.mul(self.code, self.ctx.inv(b)))

    def __pow__(self, e: int):
        return self._wrap(self.ctx.power(self.code, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.ctx.inv(self.code))

    @property
    def is_zero(self) -> bool:
        return self.code == 0

    @property
    def log(self) -> Optional[int]:
        """Exponent of alpha, or None for zero"""
        return None if self.code == 0 else int(self.ctx.log[self.code])

    @property
    def vector(self) -> Tuple[int, ...]:
        return tuple(int(d) for d in self.ctx.digits(self.code))

    def trace(self) -> int:
        return int(self.ctx.trace(self.code))

    def __repr__(self) -> str:
        if self.code == 0:
            return "0"
        return f"alpha^{self.log}"
