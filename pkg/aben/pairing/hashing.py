from __future__ import annotations

import hashlib
import logging

from aben.errors import HashToPointFailure, InvalidAttribute
from aben.pairing.curve import CurvePoint, scalar_mul
from aben.pairing.field import Fp
from aben.pairing.params import GroupParams

logger = logging.getLogger(__name__)

DOMAIN_TAG = b"ABEN-H2G-v1"
DEFAULT_MAX_COUNTER = 1024


def hash_to_group(
    attribute: bytes | str,
    params: GroupParams,
    *,
    max_counter: int = DEFAULT_MAX_COUNTER,
) -> CurvePoint:
    """Deterministically map an attribute string into the order-r subgroup.

    Try-and-increment: each counter value yields a candidate x from SHAKE-256;
    the first x with x^3 + x a square gives a point, whose multiple by the
    cofactor is returned unless it is the point at infinity.
    """

    data = attribute.encode("utf-8") if isinstance(attribute, str) else attribute
    if not data:
        raise InvalidAttribute("attribute must be non-empty")

    q = params.q
    width = params.field_bytes + 16

    for counter in range(max_counter):
        digest = hashlib.shake_256(
            DOMAIN_TAG + counter.to_bytes(4, "big") + data
        ).digest(width + 1)
        x = Fp(int.from_bytes(digest[:width], "big"), q)
        rhs = x * x * x + x
        if not rhs.is_square():
            continue

        y = rhs.sqrt()
        if digest[width] & 1:
            y = -y

        point = scalar_mul(params.h, CurvePoint(x, y))
        if not point.infinity:
            return point
        logger.debug("hash candidate %d cleared to infinity", counter)

    raise HashToPointFailure(
        f"no subgroup point found for attribute within {max_counter} counters"
    )
