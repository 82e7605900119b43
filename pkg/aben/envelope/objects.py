"""Binary layouts of parameters, keys and headers.

Public keys embed the parameter text so they are self-contained; every
other object is decoded against parameters supplied by the caller.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

from aben.envelope.codec import ObjectType, Reader, Writer
from aben.errors import AbenError, DecodeError, MalformedEnvelope, MalformedKey
from aben.pairing import GroupParams, parse_params_text, render_params_text
from aben.policy import AccessTree, AttributeSet, Position, parse_policy
from aben.schemes import (
    CpHeader,
    CpMasterKey,
    CpPrivateKey,
    CpPublicParams,
    KpHeader,
    KpMasterKey,
    KpPrivateKey,
    KpPublicParams,
)
from aben.schemes.cpabe import PointPair


@contextmanager
def _rejecting(error: type[DecodeError], offset: int) -> Iterator[None]:
    """Re-raise domain validation failures as decode errors at ``offset``."""

    try:
        yield
    except DecodeError:
        raise
    except AbenError as exc:
        raise error(str(exc), offset=offset) from exc


def _writer(object_type: ObjectType, params: GroupParams) -> Writer:
    return Writer(object_type, params.level_byte, params.field_bytes)


def _read_params(reader: Reader) -> GroupParams:
    start = reader.offset
    text = reader.text()
    with _rejecting(reader.error, start):
        params = parse_params_text(text)
    reader.check_level(params)
    return params


def _read_policy(reader: Reader) -> AccessTree:
    start = reader.offset
    text = reader.text()
    with _rejecting(reader.error, start):
        return parse_policy(text)


def _read_attribute(reader: Reader) -> str:
    start = reader.offset
    name = reader.text()
    with _rejecting(reader.error, start):
        (attribute,) = AttributeSet([name])
    return attribute


# --- group parameters -------------------------------------------------------


def serialize_params(params: GroupParams) -> bytes:
    return _writer(ObjectType.PARAMS, params).text(render_params_text(params)).getvalue()


def deserialize_params(data: bytes) -> GroupParams:
    reader = Reader(data, ObjectType.PARAMS, MalformedKey)
    params = _read_params(reader)
    reader.expect_end()
    return params


# --- ciphertext-policy ------------------------------------------------------


def serialize_cp_public(pk: CpPublicParams) -> bytes:
    writer = _writer(ObjectType.CP_PUBLIC, pk.params)
    writer.text(render_params_text(pk.params))
    writer.point(pk.g).point(pk.h_point).gt(pk.egg_alpha)
    return writer.getvalue()


def deserialize_cp_public(data: bytes) -> CpPublicParams:
    reader = Reader(data, ObjectType.CP_PUBLIC, MalformedKey)
    params = _read_params(reader)

    g_offset = reader.offset
    g = reader.point()
    if g != params.g:
        reader.fail("public generator differs from the parameter generator", offset=g_offset)
    h_point = reader.point()
    egg_offset = reader.offset
    egg_alpha = reader.gt()
    if egg_alpha.is_one():
        reader.fail("e(g,g)^alpha must not be the identity", offset=egg_offset)
    reader.expect_end()

    return CpPublicParams(params=params, g=g, h_point=h_point, egg_alpha=egg_alpha)


def serialize_cp_master(mk: CpMasterKey, params: GroupParams) -> bytes:
    writer = _writer(ObjectType.CP_MASTER, params)
    writer.scalar(mk.beta, params.scalar_bytes).point(mk.g_alpha)
    return writer.getvalue()


def deserialize_cp_master(data: bytes, params: GroupParams) -> CpMasterKey:
    reader = Reader(data, ObjectType.CP_MASTER, MalformedKey, params)
    start = reader.offset
    beta = reader.scalar()
    g_alpha = reader.point()
    reader.expect_end()

    with _rejecting(MalformedKey, start):
        return CpMasterKey(beta=beta, g_alpha=g_alpha)


def serialize_cp_key(sk: CpPrivateKey, params: GroupParams) -> bytes:
    writer = _writer(ObjectType.CP_KEY, params)
    writer.point(sk.d).count(len(sk.pairs))
    for attribute in sorted(sk.pairs):
        d_j, d_j_prime = sk.pairs[attribute]
        writer.text(attribute).point(d_j).point(d_j_prime)
    return writer.getvalue()


def deserialize_cp_key(data: bytes, params: GroupParams) -> CpPrivateKey:
    reader = Reader(data, ObjectType.CP_KEY, MalformedKey, params)
    d = reader.point()

    pairs = {}
    for _ in range(reader.count(minimum=1)):
        start = reader.offset
        attribute = _read_attribute(reader)
        if attribute in pairs:
            reader.fail(f"attribute '{attribute}' appears twice", offset=start)
        pairs[attribute] = (reader.point(), reader.point())
    reader.expect_end()

    return CpPrivateKey(d=d, pairs=pairs, attrs=AttributeSet(pairs))


def serialize_cp_header(header: CpHeader, params: GroupParams) -> bytes:
    writer = _writer(ObjectType.CP_HEADER, params)
    writer.text(header.policy.render()).point(header.c)
    for position, _ in header.policy.leaves():
        c_y, c_y_prime = header.pairs[position]
        writer.point(c_y).point(c_y_prime)
    return writer.getvalue()


def deserialize_cp_header(data: bytes, params: GroupParams) -> CpHeader:
    reader = Reader(data, ObjectType.CP_HEADER, MalformedEnvelope, params)
    policy = _read_policy(reader)
    c = reader.point()

    pairs: dict[Position, PointPair] = {}
    for position, _ in policy.leaves():
        pairs[position] = (reader.point(), reader.point())
    reader.expect_end()

    return CpHeader(c=c, pairs=pairs, policy=policy)


# --- key-policy -------------------------------------------------------------


def serialize_kp_public(pk: KpPublicParams) -> bytes:
    writer = _writer(ObjectType.KP_PUBLIC, pk.params)
    writer.text(render_params_text(pk.params)).gt(pk.y_image).count(len(pk.universe))
    for attribute, t_image in zip(pk.universe, pk.t_images):
        writer.text(attribute).point(t_image)
    return writer.getvalue()


def deserialize_kp_public(data: bytes) -> KpPublicParams:
    reader = Reader(data, ObjectType.KP_PUBLIC, MalformedKey)
    params = _read_params(reader)
    y_offset = reader.offset
    y_image = reader.gt()
    if y_image.is_one():
        reader.fail("Y must not be the identity", offset=y_offset)

    universe: list[str] = []
    t_images = []
    for _ in range(reader.count(minimum=1)):
        start = reader.offset
        attribute = _read_attribute(reader)
        if attribute in universe:
            reader.fail(f"attribute '{attribute}' appears twice", offset=start)
        universe.append(attribute)
        t_images.append(reader.point())
    reader.expect_end()

    return KpPublicParams(
        params=params,
        universe=tuple(universe),
        t_images=tuple(t_images),
        y_image=y_image,
    )


def serialize_kp_master(mk: KpMasterKey, params: GroupParams) -> bytes:
    writer = _writer(ObjectType.KP_MASTER, params)
    writer.scalar(mk.y_value, params.scalar_bytes).count(len(mk.t_values))
    for t in mk.t_values:
        writer.scalar(t, params.scalar_bytes)
    return writer.getvalue()


def deserialize_kp_master(data: bytes, params: GroupParams) -> KpMasterKey:
    reader = Reader(data, ObjectType.KP_MASTER, MalformedKey, params)
    y_value = reader.scalar()

    t_values = []
    for _ in range(reader.count(minimum=1)):
        start = reader.offset
        t = reader.scalar()
        if t == 0:
            reader.fail("attribute secret is zero", offset=start)
        t_values.append(t)
    reader.expect_end()

    return KpMasterKey(t_values=tuple(t_values), y_value=y_value)


def serialize_kp_key(sk: KpPrivateKey, params: GroupParams) -> bytes:
    writer = _writer(ObjectType.KP_KEY, params)
    writer.text(sk.policy.render())
    for position, _ in sk.policy.leaves():
        writer.point(sk.components[position])
    return writer.getvalue()


def deserialize_kp_key(data: bytes, params: GroupParams) -> KpPrivateKey:
    reader = Reader(data, ObjectType.KP_KEY, MalformedKey, params)
    policy = _read_policy(reader)
    components = {position: reader.point() for position, _ in policy.leaves()}
    reader.expect_end()
    return KpPrivateKey(policy=policy, components=components)


def serialize_kp_header(header: KpHeader, params: GroupParams) -> bytes:
    writer = _writer(ObjectType.KP_HEADER, params).count(len(header.components))
    for attribute in sorted(header.components):
        writer.text(attribute).point(header.components[attribute])
    return writer.getvalue()


def deserialize_kp_header(data: bytes, params: GroupParams) -> KpHeader:
    reader = Reader(data, ObjectType.KP_HEADER, MalformedEnvelope, params)

    components = {}
    for _ in range(reader.count(minimum=1)):
        start = reader.offset
        attribute = _read_attribute(reader)
        if attribute in components:
            reader.fail(f"attribute '{attribute}' appears twice", offset=start)
        components[attribute] = reader.point()
    reader.expect_end()

    return KpHeader(attrs=AttributeSet(components), components=components)
