from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from aben.pairing.field import Fp

# y^2 = x^3 + A*x + B
CURVE_A = 1
CURVE_B = 0


@dataclass(frozen=True)
class CurvePoint:
    x: Fp
    y: Fp
    infinity: bool = False

    @classmethod
    def at_infinity(cls, q: int) -> CurvePoint:
        return cls(Fp.zero(q), Fp.zero(q), True)

    @classmethod
    def from_ints(cls, x: int, y: int, q: int) -> CurvePoint:
        return cls(Fp(x, q), Fp(y, q))

    @property
    def q(self) -> int:
        return self.x.q

    def is_on_curve(self) -> bool:
        if self.infinity:
            return True
        return self.y * self.y == self.x * self.x * self.x + self.x * CURVE_A + CURVE_B

    def __neg__(self) -> CurvePoint:
        if self.infinity:
            return self
        return CurvePoint(self.x, -self.y)

    def __add__(self, other: CurvePoint) -> CurvePoint:
        return point_add(self, other)

    def __sub__(self, other: CurvePoint) -> CurvePoint:
        return point_add(self, -other)

    def __rmul__(self, k: int) -> CurvePoint:
        return scalar_mul(k, self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity == other.infinity and self.q == other.q
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self.infinity:
            return hash(("inf", self.q))
        return hash((self.x.value, self.y.value, self.q))

    def __repr__(self) -> str:
        if self.infinity:
            return "CurvePoint(infinity)"
        return f"CurvePoint({self.x.value:#x}, {self.y.value:#x})"


def point_add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord-tangent addition with the point at infinity as identity."""

    if P.infinity:
        return Q
    if Q.infinity:
        return P

    if P.x == Q.x:
        if P.y != Q.y or P.y.is_zero():
            return CurvePoint.at_infinity(P.q)
        slope = (P.x * P.x * 3 + CURVE_A) / (P.y * 2)
    else:
        slope = (Q.y - P.y) / (Q.x - P.x)

    x3 = slope * slope - P.x - Q.x
    y3 = slope * (P.x - x3) - P.y
    return CurvePoint(x3, y3)


def scalar_mul(k: int, P: CurvePoint) -> CurvePoint:
    """[k]P by left-to-right double-and-add in Jacobian coordinates.

    k is not reduced modulo any group order, so the same routine serves
    cofactor clearing and subgroup membership tests.
    """

    q = P.q
    if P.infinity or k == 0:
        return CurvePoint.at_infinity(q)
    if k < 0:
        return scalar_mul(-k, -P)

    px, py = P.x.value, P.y.value
    acc: Optional[tuple[int, int, int]] = None

    for bit in bin(k)[2:]:
        if acc is not None:
            acc = _jacobian_double(acc, q)
        if bit == "1":
            acc = (px, py, 1) if acc is None else _jacobian_add_affine(acc, px, py, q)

    return _to_affine(acc, q)


def iter_points(q: int) -> Iterator[CurvePoint]:
    """Every affine point of the curve over F_q, then infinity. Toy sizes only."""

    squares: dict[int, list[int]] = {}
    for y in range(q):
        squares.setdefault(y * y % q, []).append(y)
    for x in range(q):
        rhs = (x * x * x + CURVE_A * x + CURVE_B) % q
        for y in squares.get(rhs, []):
            yield CurvePoint.from_ints(x, y, q)
    yield CurvePoint.at_infinity(q)


def _jacobian_double(
    point: Optional[tuple[int, int, int]],
    q: int,
) -> Optional[tuple[int, int, int]]:
    if point is None:
        return None
    x, y, z = point
    if y == 0:
        return None
    yy = y * y % q
    s = 4 * x * yy % q
    z2 = z * z % q
    m = (3 * x * x + CURVE_A * z2 * z2) % q
    x3 = (m * m - 2 * s) % q
    y3 = (m * (s - x3) - 8 * yy * yy) % q
    z3 = 2 * y * z % q
    return x3, y3, z3


def _jacobian_add_affine(
    point: Optional[tuple[int, int, int]],
    x2: int,
    y2: int,
    q: int,
) -> Optional[tuple[int, int, int]]:
    if point is None:
        return x2, y2, 1
    x1, y1, z1 = point
    z1z1 = z1 * z1 % q
    u2 = x2 * z1z1 % q
    s2 = y2 * z1 * z1z1 % q
    h = (u2 - x1) % q
    rr = (s2 - y1) % q
    if h == 0:
        if rr == 0:
            return _jacobian_double(point, q)
        return None
    hh = h * h % q
    hhh = h * hh % q
    v = x1 * hh % q
    x3 = (rr * rr - hhh - 2 * v) % q
    y3 = (rr * (v - x3) - y1 * hhh) % q
    z3 = z1 * h % q
    return x3, y3, z3


def _to_affine(point: Optional[tuple[int, int, int]], q: int) -> CurvePoint:
    if point is None:
        return CurvePoint.at_infinity(q)
    x, y, z = point
    z_inv = pow(z, -1, q)
    z_inv2 = z_inv * z_inv % q
    return CurvePoint.from_ints(x * z_inv2, y * z_inv2 * z_inv, q)
