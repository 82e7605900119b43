"""Prime field F_q and its quadratic extension F_q[i]/(i^2 + 1).

Arithmetic is plain Python integers; nothing here is constant time.
"""

from __future__ import annotations

from typing import Union

IntLike = Union[int, "Fp"]


class Fp:
    __slots__ = ("value", "q")

    def __init__(self, value: int, q: int):
        self.value = value % q
        self.q = q

    @classmethod
    def zero(cls, q: int) -> Fp:
        return cls(0, q)

    @classmethod
    def one(cls, q: int) -> Fp:
        return cls(1, q)

    def _coerce(self, other: IntLike) -> int:
        if isinstance(other, Fp):
            if other.q != self.q:
                raise ValueError("operands belong to different fields")
            return other.value
        return other

    def __add__(self, other: IntLike) -> Fp:
        return Fp(self.value + self._coerce(other), self.q)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> Fp:
        return Fp(self.value - self._coerce(other), self.q)

    def __rsub__(self, other: IntLike) -> Fp:
        return Fp(self._coerce(other) - self.value, self.q)

    def __mul__(self, other: IntLike) -> Fp:
        return Fp(self.value * self._coerce(other), self.q)

    __rmul__ = __mul__

    def __neg__(self) -> Fp:
        return Fp(-self.value, self.q)

    def __truediv__(self, other: IntLike) -> Fp:
        divisor = other if isinstance(other, Fp) else Fp(other, self.q)
        return self * divisor.inverse()

    def __pow__(self, exponent: int) -> Fp:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Fp(pow(self.value, exponent, self.q), self.q)

    def inverse(self) -> Fp:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return Fp(pow(self.value, -1, self.q), self.q)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_square(self) -> bool:
        # Euler's criterion; 0 counts as a square
        if self.value == 0:
            return True
        return pow(self.value, (self.q - 1) // 2, self.q) == 1

    def sqrt(self) -> Fp:
        """Square root for q = 3 mod 4; raises ValueError on non-residues."""
        root = Fp(pow(self.value, (self.q + 1) // 4, self.q), self.q)
        if root * root != self:
            raise ValueError("element is not a quadratic residue")
        return root

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fp):
            return self.q == other.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.q))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fp({self.value:#x})"


class Fp2:
    """a + b*i with i^2 = -1; components are canonical residues mod q."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a: int, b: int, q: int):
        self.a = a % q
        self.b = b % q
        self.q = q

    @classmethod
    def zero(cls, q: int) -> Fp2:
        return cls(0, 0, q)

    @classmethod
    def one(cls, q: int) -> Fp2:
        return cls(1, 0, q)

    @classmethod
    def from_fp(cls, real: Fp, imag: Fp) -> Fp2:
        return cls(real.value, imag.value, real.q)

    @property
    def real(self) -> Fp:
        return Fp(self.a, self.q)

    @property
    def imag(self) -> Fp:
        return Fp(self.b, self.q)

    def __add__(self, other: Fp2) -> Fp2:
        return Fp2(self.a + other.a, self.b + other.b, self.q)

    def __sub__(self, other: Fp2) -> Fp2:
        return Fp2(self.a - other.a, self.b - other.b, self.q)

    def __neg__(self) -> Fp2:
        return Fp2(-self.a, -self.b, self.q)

    def __mul__(self, other: Union[Fp2, int]) -> Fp2:
        if isinstance(other, int):
            return Fp2(self.a * other, self.b * other, self.q)
        a, b, c, d = self.a, self.b, other.a, other.b
        ac = a * c
        bd = b * d
        cross = (a + b) * (c + d) - ac - bd
        return Fp2(ac - bd, cross, self.q)

    __rmul__ = __mul__

    def square(self) -> Fp2:
        a, b = self.a, self.b
        return Fp2((a + b) * (a - b), 2 * a * b, self.q)

    def conjugate(self) -> Fp2:
        return Fp2(self.a, -self.b, self.q)

    def norm(self) -> int:
        return (self.a * self.a + self.b * self.b) % self.q

    def inverse(self) -> Fp2:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse in F_q^2")
        n_inv = pow(n, -1, self.q)
        return Fp2(self.a * n_inv, -self.b * n_inv, self.q)

    def __truediv__(self, other: Fp2) -> Fp2:
        return self * other.inverse()

    def __pow__(self, exponent: int) -> Fp2:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Fp2.one(self.q)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base.square()
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fp2):
            return NotImplemented
        return self.q == other.q and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.q))

    def __repr__(self) -> str:
        return f"Fp2({self.a:#x} + {self.b:#x}*i)"
