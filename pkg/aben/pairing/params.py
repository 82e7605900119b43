from __future__ import annotations

import logging
import random
from enum import IntEnum
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

from aben.errors import InvalidGroupParams, ParameterSearchExhausted
from aben.pairing.curve import CurvePoint, scalar_mul
from aben.pairing.field import Fp

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 200_000


class SecurityLevel(IntEnum):
    L80 = 80
    L112 = 112
    L128 = 128


# (bit length of r, bit length of q)
LEVEL_BITS: dict[SecurityLevel, tuple[int, int]] = {
    SecurityLevel.L80: (160, 512),
    SecurityLevel.L112: (224, 1024),
    SecurityLevel.L128: (256, 1536),
}


class GroupParams(BaseModel):
    q: int = Field(..., description="Field characteristic, q = 3 mod 4")
    r: int = Field(..., description="Prime order of the pairing subgroup")
    h: int = Field(..., description="Cofactor with q + 1 = h * r")
    g: CurvePoint = Field(..., description="Generator of the order-r subgroup")
    security_level: Optional[SecurityLevel] = Field(
        default=None,
        description="80/112/128, or None for toy and custom profiles",
    )

    @field_validator("q")
    @classmethod
    def validate_q(cls, value: int) -> int:
        if value % 4 != 3:
            raise InvalidGroupParams(f"q must be 3 mod 4, got q mod 4 = {value % 4}")
        if not isprime(value):
            raise InvalidGroupParams("q is not prime")
        return value

    @field_validator("r")
    @classmethod
    def validate_r(cls, value: int) -> int:
        if not isprime(value):
            raise InvalidGroupParams("r is not prime")
        return value

    @field_validator("h")
    @classmethod
    def validate_h(cls, value: int) -> int:
        if value <= 0 or value % 4 != 0:
            raise InvalidGroupParams("cofactor h must be a positive multiple of 4")
        return value

    @model_validator(mode="after")
    def validate_structure(self) -> GroupParams:
        if self.q + 1 != self.h * self.r:
            raise InvalidGroupParams("q + 1 must equal h * r")

        if self.security_level is not None:
            r_bits, q_bits = LEVEL_BITS[self.security_level]
            if self.r.bit_length() != r_bits or self.q.bit_length() != q_bits:
                raise InvalidGroupParams(
                    f"level {int(self.security_level)} requires |r| = {r_bits}, "
                    f"|q| = {q_bits} bits; got {self.r.bit_length()}, {self.q.bit_length()}"
                )

        if self.g.q != self.q or self.g.infinity or not self.g.is_on_curve():
            raise InvalidGroupParams("generator is not an affine point of the curve")
        if not scalar_mul(self.r, self.g).infinity:
            raise InvalidGroupParams("generator does not have order r")
        return self

    @property
    def field_bytes(self) -> int:
        return (self.q.bit_length() + 7) // 8

    @property
    def scalar_bytes(self) -> int:
        return (self.r.bit_length() + 7) // 8

    @property
    def level_byte(self) -> int:
        return int(self.security_level) if self.security_level is not None else 0

    @property
    def final_exponent(self) -> int:
        return (self.q * self.q - 1) // self.r

    def infinity(self) -> CurvePoint:
        return CurvePoint.at_infinity(self.q)

    class Config:
        frozen = True
        arbitrary_types_allowed = True


def toy_params() -> GroupParams:
    """q = 11, r = 3, h = 4: small enough to enumerate every point and pairing."""

    return GroupParams(q=11, r=3, h=4, g=CurvePoint.from_ints(5, 3, 11))


def generate_params(
    security_level: SecurityLevel | int,
    rng: random.Random,
    *,
    max_iterations: int = DEFAULT_SEARCH_BUDGET,
) -> GroupParams:
    level = SecurityLevel(security_level)
    r_bits, q_bits = LEVEL_BITS[level]

    r = _random_prime(r_bits, rng, max_iterations)

    # q = 4*m*r - 1 lands in [2^(q_bits-1), 2^q_bits - 1]
    m_low = -(-(2 ** (q_bits - 1) + 1) // (4 * r))
    m_high = 2**q_bits // (4 * r)

    for attempt in range(1, max_iterations + 1):
        m = rng.randint(m_low, m_high)
        q = 4 * m * r - 1
        if isprime(q):
            logger.debug("found q after %d multipliers", attempt)
            break
    else:
        raise ParameterSearchExhausted(
            f"no prime q of {q_bits} bits within {max_iterations} multipliers"
        )

    h = 4 * m
    g = _find_generator(q, r, h, rng, max_iterations)
    logger.info("generated type-a parameters for level %d", int(level))

    return GroupParams(q=q, r=r, h=h, g=g, security_level=level)


def render_params_text(params: GroupParams) -> str:
    lines = [
        "type=a",
        f"q={params.q:x}",
        f"r={params.r:x}",
        f"h={params.h:x}",
        f"gx={params.g.x.value:x}",
        f"gy={params.g.y.value:x}",
        f"level={params.level_byte}",
    ]
    return "\n".join(lines) + "\n"


def parse_params_text(text: str) -> GroupParams:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidGroupParams(f"line {lineno}: expected key=value")
        key, value = line.split("=", 1)
        if key in values:
            raise InvalidGroupParams(f"line {lineno}: duplicate key '{key}'")
        values[key] = value

    missing = {"type", "q", "r", "h", "gx", "gy", "level"} - values.keys()
    if missing:
        raise InvalidGroupParams("missing keys: " + ", ".join(sorted(missing)))
    if values["type"] != "a":
        raise InvalidGroupParams(f"unsupported pairing type '{values['type']}'")

    try:
        q = int(values["q"], 16)
        r = int(values["r"], 16)
        h = int(values["h"], 16)
        gx = int(values["gx"], 16)
        gy = int(values["gy"], 16)
        level = int(values["level"])
    except ValueError as exc:
        raise InvalidGroupParams(f"invalid number in parameters: {exc}") from exc

    if gx >= q or gy >= q:
        raise InvalidGroupParams("generator coordinates out of range")

    return GroupParams(
        q=q,
        r=r,
        h=h,
        g=CurvePoint.from_ints(gx, gy, q),
        security_level=_level_from_byte(level),
    )


def _level_from_byte(level: int) -> Optional[SecurityLevel]:
    if level == 0:
        return None
    try:
        return SecurityLevel(level)
    except ValueError as exc:
        raise InvalidGroupParams(f"unknown security level {level}") from exc


def _random_prime(bits: int, rng: random.Random, max_iterations: int) -> int:
    for _ in range(max_iterations):
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if isprime(candidate):
            return candidate
    raise ParameterSearchExhausted(
        f"no {bits}-bit prime found within {max_iterations} candidates"
    )


def _find_generator(
    q: int,
    r: int,
    h: int,
    rng: random.Random,
    max_iterations: int,
) -> CurvePoint:
    for _ in range(max_iterations):
        x = Fp(rng.randrange(q), q)
        rhs = x * x * x + x
        if not rhs.is_square():
            continue
        point = CurvePoint(x, rhs.sqrt())
        g = scalar_mul(h, point)
        if not g.infinity:
            return g
    raise ParameterSearchExhausted("no subgroup generator found")
