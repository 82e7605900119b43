"""ABE header encapsulating an AES-256-GCM key that protects the payload.

Envelope fields, after the preamble:

    scheme tag ("cp" | "kp") | header | sha256(header) | nonce | ciphertext | tag

The AEAD associated data is the scheme tag followed by the header bytes.
"""

from __future__ import annotations

import hashlib
import logging
import random
from dataclasses import dataclass
from typing import Iterable, Union

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from aben.envelope.codec import ObjectType, Reader, Writer, encode_gt, field_width
from aben.envelope.objects import (
    deserialize_cp_header,
    deserialize_kp_header,
    serialize_cp_header,
    serialize_kp_header,
)
from aben.errors import AuthenticationFailure, MalformedEnvelope
from aben.pairing import GtElement
from aben.policy import AccessTree, parse_policy
from aben.schemes import (
    CpPrivateKey,
    CpPublicParams,
    KpPrivateKey,
    KpPublicParams,
    cp_decrypt,
    cp_encrypt,
    kp_decrypt,
    kp_encrypt,
)

logger = logging.getLogger(__name__)

KDF_TAG = b"ABEN-KDF-v1"
KEY_SIZE = 32
NONCE_SIZE = 12
TAG_SIZE = 16
DIGEST_SIZE = 32

# preamble, the length-prefixed two-byte scheme tag, then the header length prefix
_HEADER_OFFSET = 7 + 4 + 2 + 4

SCHEME_CP = "cp"
SCHEME_KP = "kp"

PublicKey = Union[CpPublicParams, KpPublicParams]
PrivateKey = Union[CpPrivateKey, KpPrivateKey]


@dataclass(frozen=True)
class Envelope:
    scheme: str
    header: bytes
    nonce: bytes
    ciphertext: bytes
    tag: bytes

    @property
    def aad(self) -> bytes:
        return self.scheme.encode("ascii") + self.header


def derive_key(k: GtElement) -> bytes:
    if k.is_one():
        logger.warning("deriving a symmetric key from the identity element of GT")
    width = field_width(k.value.q)
    return hashlib.sha256(KDF_TAG + encode_gt(k, width)).digest()


def seal(
    pk: PublicKey,
    target: Union[AccessTree, str, Iterable[str]],
    payload: bytes,
    rng: random.Random,
) -> Envelope:
    """Encrypt ``payload`` under a policy (cp) or an attribute set (kp)."""

    params = pk.params
    if isinstance(pk, CpPublicParams):
        policy = parse_policy(target) if isinstance(target, str) else target
        header, session = cp_encrypt(pk, policy, rng)
        scheme, header_bytes = SCHEME_CP, serialize_cp_header(header, params)
    else:
        header, session = kp_encrypt(pk, target, rng)
        scheme, header_bytes = SCHEME_KP, serialize_kp_header(header, params)

    nonce = rng.randbytes(NONCE_SIZE)
    aad = scheme.encode("ascii") + header_bytes
    sealed = AESGCM(derive_key(session)).encrypt(nonce, payload, aad)

    return Envelope(
        scheme=scheme,
        header=header_bytes,
        nonce=nonce,
        ciphertext=sealed[:-TAG_SIZE],
        tag=sealed[-TAG_SIZE:],
    )


def open_envelope(
    pk: PublicKey,
    sk: PrivateKey,
    envelope: Union[Envelope, bytes],
) -> bytes:
    if isinstance(envelope, bytes):
        envelope = deserialize_envelope(envelope)

    params = pk.params
    expected = SCHEME_CP if isinstance(pk, CpPublicParams) else SCHEME_KP
    if envelope.scheme != expected:
        raise MalformedEnvelope(
            f"envelope was sealed for scheme '{envelope.scheme}', key is '{expected}'",
            offset=7,
        )

    try:
        if expected == SCHEME_CP:
            session = cp_decrypt(pk, sk, deserialize_cp_header(envelope.header, params))
        else:
            session = kp_decrypt(pk, sk, deserialize_kp_header(envelope.header, params))
    except MalformedEnvelope as exc:
        # header offsets are relative to the header field
        raise MalformedEnvelope(exc.reason, offset=_HEADER_OFFSET + exc.offset) from exc

    try:
        return AESGCM(derive_key(session)).decrypt(
            envelope.nonce,
            envelope.ciphertext + envelope.tag,
            envelope.aad,
        )
    except InvalidTag as exc:
        raise AuthenticationFailure(
            "payload authentication failed: tampered envelope or wrong key"
        ) from exc


def serialize_envelope(envelope: Envelope, level: int) -> bytes:
    writer = Writer(ObjectType.ENVELOPE, level)
    writer.text(envelope.scheme)
    writer.field(envelope.header)
    writer.field(hashlib.sha256(envelope.header).digest())
    writer.field(envelope.nonce)
    writer.field(envelope.ciphertext)
    writer.field(envelope.tag)
    return writer.getvalue()


def deserialize_envelope(data: bytes) -> Envelope:
    reader = Reader(data, ObjectType.ENVELOPE, MalformedEnvelope)

    start = reader.offset
    scheme = reader.text()
    if scheme not in (SCHEME_CP, SCHEME_KP):
        reader.fail(f"unknown scheme tag {scheme!r}", offset=start)

    header_start, header = reader.field()
    _, digest = reader.field(DIGEST_SIZE)
    if hashlib.sha256(header).digest() != digest:
        reader.fail("header digest mismatch", offset=header_start)
    if len(header) < 7 or header[6] != reader.level:
        reader.fail("header level differs from envelope level", offset=header_start)

    _, nonce = reader.field(NONCE_SIZE)
    _, ciphertext = reader.field()
    _, tag = reader.field(TAG_SIZE)
    reader.expect_end()

    return Envelope(scheme=scheme, header=header, nonce=nonce, ciphertext=ciphertext, tag=tag)

