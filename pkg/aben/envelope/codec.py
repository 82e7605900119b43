"""Framing shared by every serialized object.

    magic "ABEN" | version 0x01 | object type | level byte | fields...

Each field is a 4-byte big-endian length followed by its bytes. Points are
``x || y`` at the fixed field width (an empty field is the point at
infinity), GT elements ``a || b`` for ``a + b*i``, scalars fixed-width at the
width of r, strings UTF-8. A sequence of entries is preceded by a count
field holding its length as a 4-byte big-endian integer.
"""

from __future__ import annotations

import logging
import struct
from enum import IntEnum
from typing import Optional

from aben.errors import DecodeError, MalformedEnvelope
from aben.pairing import CurvePoint, GroupParams, GtElement, scalar_mul
from aben.pairing.field import Fp2

logger = logging.getLogger(__name__)

MAGIC = b"ABEN"
VERSION = 0x01
PREAMBLE_SIZE = 7
LENGTH_SIZE = 4

_LENGTH = struct.Struct(">I")


class ObjectType(IntEnum):
    PARAMS = 0x01
    CP_PUBLIC = 0x02
    CP_MASTER = 0x03
    CP_KEY = 0x04
    CP_HEADER = 0x05
    KP_PUBLIC = 0x06
    KP_MASTER = 0x07
    KP_KEY = 0x08
    KP_HEADER = 0x09
    ENVELOPE = 0x0A


def field_width(q: int) -> int:
    return (q.bit_length() + 7) // 8


def encode_point(point: CurvePoint, width: int) -> bytes:
    if point.infinity:
        return b""
    return point.x.value.to_bytes(width, "big") + point.y.value.to_bytes(width, "big")


def encode_gt(element: GtElement, width: int) -> bytes:
    value = element.value
    return value.a.to_bytes(width, "big") + value.b.to_bytes(width, "big")


def peek_object(
    data: bytes,
    error: type[DecodeError] = MalformedEnvelope,
) -> tuple[ObjectType, int]:
    """Object type and level byte of a serialized object, without decoding it."""

    _check_preamble(data, error)
    try:
        object_type = ObjectType(data[5])
    except ValueError:
        raise error(f"unknown object type 0x{data[5]:02x}", offset=5) from None
    return object_type, data[6]


class Writer:
    def __init__(self, object_type: ObjectType, level: int, width: int = 0):
        self.width = width
        self._parts = [MAGIC, bytes([VERSION, int(object_type), level])]

    def field(self, data: bytes) -> Writer:
        self._parts.append(_LENGTH.pack(len(data)))
        self._parts.append(data)
        return self

    def text(self, value: str) -> Writer:
        return self.field(value.encode("utf-8"))

    def point(self, point: CurvePoint) -> Writer:
        return self.field(encode_point(point, self.width))

    def gt(self, element: GtElement) -> Writer:
        return self.field(encode_gt(element, self.width))

    def count(self, n: int) -> Writer:
        return self.field(_LENGTH.pack(n))

    def scalar(self, value: int, width: int) -> Writer:
        return self.field(value.to_bytes(width, "big"))

    def getvalue(self) -> bytes:
        return b"".join(self._parts)


class Reader:
    """Cursor over one framed object; every failure carries its byte offset."""

    def __init__(
        self,
        data: bytes,
        object_type: ObjectType,
        error: type[DecodeError],
        params: Optional[GroupParams] = None,
    ):
        self.data = data
        self.error = error
        self.offset = PREAMBLE_SIZE
        self.params = params

        found, self.level = peek_object(data, error)
        if found != object_type:
            raise error(
                f"expected object type {object_type.name}, found {found.name}",
                offset=5,
            )
        if params is not None:
            self.check_level(params)

    @property
    def remaining(self) -> int:
        return len(self.data) - self.offset

    def at_end(self) -> bool:
        return self.offset >= len(self.data)

    def fail(self, reason: str, offset: Optional[int] = None) -> None:
        raise self.error(reason, offset=self.offset if offset is None else offset)

    def check_level(self, params: GroupParams) -> None:
        if self.level != params.level_byte:
            self.fail(
                f"level byte {self.level} does not match parameters "
                f"(level {params.level_byte})",
                offset=6,
            )
        self.params = params

    def field(self, size: Optional[int] = None) -> tuple[int, bytes]:
        """Next field as (offset of its length prefix, payload)."""

        start = self.offset
        if self.remaining < LENGTH_SIZE:
            self.fail("truncated length prefix")
        (length,) = _LENGTH.unpack_from(self.data, start)
        if length > self.remaining - LENGTH_SIZE:
            self.fail(f"field length {length} exceeds remaining input")
        if size is not None and length != size:
            self.fail(f"expected a {size}-byte field, found {length} bytes")

        self.offset = start + LENGTH_SIZE + length
        return start, self.data[start + LENGTH_SIZE : self.offset]

    def count(self, minimum: int = 0) -> int:
        start, raw = self.field(LENGTH_SIZE)
        (n,) = _LENGTH.unpack(raw)
        if n < minimum:
            self.fail(f"expected at least {minimum} entries, found {n}", offset=start)
        # every entry takes at least one length prefix
        if n * LENGTH_SIZE > self.remaining:
            self.fail(f"entry count {n} exceeds remaining input", offset=start)
        return n

    def text(self) -> str:
        start, raw = self.field()
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError:
            self.fail("string field is not valid UTF-8", offset=start)
            raise AssertionError("unreachable")

    def scalar(self) -> int:
        params = self._require_params()
        start, raw = self.field(params.scalar_bytes)
        value = int.from_bytes(raw, "big")
        if value >= params.r:
            self.fail("scalar is not reduced modulo r", offset=start)
        return value

    def point(self) -> CurvePoint:
        params = self._require_params()
        width = params.field_bytes
        start, raw = self.field()
        if not raw:
            return params.infinity()
        if len(raw) != 2 * width:
            self.fail(f"point field must be {2 * width} bytes, found {len(raw)}", offset=start)

        x = int.from_bytes(raw[:width], "big")
        y = int.from_bytes(raw[width:], "big")
        if x >= params.q or y >= params.q:
            self.fail("point coordinate is not reduced modulo q", offset=start)

        point = CurvePoint.from_ints(x, y, params.q)
        if not point.is_on_curve():
            logger.debug("rejected off-curve point at offset %d", start)
            self.fail("point is not on the curve", offset=start)
        if not scalar_mul(params.r, point).infinity:
            logger.debug("rejected point outside the subgroup at offset %d", start)
            self.fail("point is not in the order-r subgroup", offset=start)
        return point

    def gt(self) -> GtElement:
        params = self._require_params()
        width = params.field_bytes
        start, raw = self.field(2 * width)

        a = int.from_bytes(raw[:width], "big")
        b = int.from_bytes(raw[width:], "big")
        if a >= params.q or b >= params.q:
            self.fail("GT component is not reduced modulo q", offset=start)

        value = Fp2(a, b, params.q)
        if value.is_zero() or not (value ** params.r).is_one():
            self.fail("GT element is not in the order-r subgroup", offset=start)
        return GtElement(value)

    def expect_end(self) -> None:
        if not self.at_end():
            self.fail(f"{self.remaining} trailing bytes")

    def _require_params(self) -> GroupParams:
        if self.params is None:
            raise AssertionError("group parameters must be known before decoding group elements")
        return self.params


def _check_preamble(data: bytes, error: type[DecodeError]) -> None:
    if len(data) < PREAMBLE_SIZE:
        raise error("truncated preamble", offset=len(data))
    if data[:4] != MAGIC:
        raise error("bad magic", offset=0)
    if data[4] != VERSION:
        raise error(f"unsupported version {data[4]}", offset=4)
