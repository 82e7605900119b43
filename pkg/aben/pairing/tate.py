"""Reduced Tate pairing on y^2 = x^3 + x with the distortion map (x, y) -> (-x, i*y).

Vertical-line factors lie in F_q and are erased by the final exponentiation,
so the Miller loop multiplies only the sloped line values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from aben.errors import NotInSubgroup
from aben.pairing.curve import CURVE_A, CurvePoint, scalar_mul
from aben.pairing.field import Fp2
from aben.pairing.params import GroupParams


@dataclass(frozen=True)
class GtElement:
    value: Fp2

    @classmethod
    def one(cls, q: int) -> GtElement:
        return cls(Fp2.one(q))

    def is_one(self) -> bool:
        return self.value.is_one()

    def __mul__(self, other: GtElement) -> GtElement:
        return GtElement(self.value * other.value)

    def __truediv__(self, other: GtElement) -> GtElement:
        return GtElement(self.value * other.value.inverse())

    def __pow__(self, k: int) -> GtElement:
        return GtElement(self.value**k)

    def inverse(self) -> GtElement:
        return GtElement(self.value.inverse())

    def __repr__(self) -> str:
        return f"GtElement({self.value!r})"


def gt_mul(x: GtElement, y: GtElement) -> GtElement:
    return x * y


def gt_inv(x: GtElement) -> GtElement:
    return x.inverse()


def gt_pow(x: GtElement, k: int) -> GtElement:
    return x**k


def pairing(
    P: CurvePoint,
    Q: CurvePoint,
    params: GroupParams,
    *,
    check_subgroup: bool = True,
) -> GtElement:
    """e(P, Q) = Tate_r(P, phi(Q)) ** ((q^2 - 1) / r).

    Membership of P is verified by the Miller loop itself; Q costs one
    extra scalar multiplication unless ``check_subgroup`` is False.
    """

    if check_subgroup:
        _require_subgroup(Q, params)
    return _final_exponentiation(_miller_loop(P, Q, params), params)


def pairing_product(
    pairs: Iterable[tuple[CurvePoint, CurvePoint]],
    params: GroupParams,
    *,
    check_subgroup: bool = True,
) -> GtElement:
    """Product of e(P_i, Q_i) with a single shared final exponentiation."""

    acc = Fp2.one(params.q)
    for P, Q in pairs:
        if check_subgroup:
            _require_subgroup(Q, params)
        acc = acc * _miller_loop(P, Q, params)
    return _final_exponentiation(acc, params)


def _require_subgroup(point: CurvePoint, params: GroupParams) -> None:
    if not scalar_mul(params.r, point).infinity:
        raise NotInSubgroup(f"{point!r} is not in the order-r subgroup")


def _miller_loop(P: CurvePoint, Q: CurvePoint, params: GroupParams) -> Fp2:
    q = params.q
    if P.infinity or Q.infinity:
        return Fp2.one(q)

    xp, yp = P.x.value, P.y.value
    xq, yq = Q.x.value, Q.y.value
    f = Fp2.one(q)
    tx, ty = xp, yp
    bits = bin(params.r)[3:]

    for index, bit in enumerate(bits):
        last = index == len(bits) - 1

        if ty == 0:
            raise NotInSubgroup(f"{P!r} has even order")
        slope = (3 * tx * tx + CURVE_A) * pow(2 * ty, -1, q) % q
        # tangent at T evaluated at phi(Q) = (-xq, i*yq)
        f = f.square() * Fp2(slope * (xq + tx) - ty, yq, q)
        nx = (slope * slope - 2 * tx) % q
        ty = (slope * (tx - nx) - ty) % q
        tx = nx

        if bit == "1":
            if tx == xp:
                # T = -P: vertical line, legitimate only on the final step
                if ty == yp or not last:
                    raise NotInSubgroup(f"{P!r} is not in the order-r subgroup")
                return f
            slope = (yp - ty) * pow(xp - tx, -1, q) % q
            f = f * Fp2(slope * (xq + tx) - ty, yq, q)
            nx = (slope * slope - tx - xp) % q
            ty = (slope * (tx - nx) - ty) % q
            tx = nx

    raise NotInSubgroup(f"{P!r} is not in the order-r subgroup")


def _final_exponentiation(f: Fp2, params: GroupParams) -> GtElement:
    # (q^2 - 1)/r = (q - 1) * h, and f^q is the conjugate of f
    unitary = f.conjugate() * f.inverse()
    return GtElement(unitary**params.h)
