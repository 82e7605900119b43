import logging

import pytest

from aben.envelope import (
    Envelope,
    derive_key,
    deserialize_envelope,
    deserialize_kp_header,
    open_envelope,
    seal,
    serialize_envelope,
)
from aben.envelope.hybrid import KDF_TAG
from aben.errors import AuthenticationFailure, MalformedEnvelope, PolicyNotSatisfied
from aben.pairing import Fp2, GtElement
from aben.policy import parse_policy
from aben.schemes import cp_keygen, cp_setup, kp_keygen, kp_setup
from aben.utils.rng import ChaChaRandom

PAYLOAD = b"the quick brown fox jumps over the lazy dog"


@pytest.fixture(scope="module")
def cp_pair(params80):
    rng = ChaChaRandom("envelope-cp")
    pk, mk = cp_setup(params80, rng)
    return pk, cp_keygen(pk, mk, ["doctor", "cardiology"], rng), mk


@pytest.fixture(scope="module")
def kp_pair(params80):
    rng = ChaChaRandom("envelope-kp")
    pk, mk = kp_setup(params80, ["doctor", "nurse", "cardiology"], rng)
    return pk, kp_keygen(pk, mk, parse_policy("doctor and cardiology"), rng), mk


def flip(data: bytes, bit: int) -> bytes:
    corrupted = bytearray(data)
    corrupted[bit // 8] ^= 1 << (bit % 8)
    return bytes(corrupted)


@pytest.mark.parametrize("payload", [b"", PAYLOAD, bytes(range(256)) * 4096])
def test_cp_round_trip(cp_pair, params80, rng, payload):
    pk, sk, _ = cp_pair
    envelope = seal(pk, "doctor and (cardiology or oncology)", payload, rng)
    data = serialize_envelope(envelope, params80.level_byte)
    assert open_envelope(pk, sk, data) == payload
    assert open_envelope(pk, sk, envelope) == payload


@pytest.mark.parametrize("payload", [b"", PAYLOAD, bytes(range(256)) * 4096])
def test_kp_round_trip(kp_pair, params80, rng, payload):
    pk, sk, _ = kp_pair
    envelope = seal(pk, ["doctor", "cardiology"], payload, rng)
    data = serialize_envelope(envelope, params80.level_byte)
    assert open_envelope(pk, sk, data) == payload


def test_envelope_size(cp_pair, params80, rng):
    pk, _, _ = cp_pair
    envelope = seal(pk, parse_policy("doctor"), PAYLOAD, rng)
    data = serialize_envelope(envelope, params80.level_byte)
    assert len(data) == len(envelope.header) + len(PAYLOAD) + 28 + 65
    assert len(envelope.nonce) == 12
    assert len(envelope.tag) == 16
    assert deserialize_envelope(data) == envelope


def test_aad_binds_the_scheme_and_header(cp_pair, rng):
    pk, _, _ = cp_pair
    envelope = seal(pk, "doctor", PAYLOAD, rng)
    assert envelope.aad == b"cp" + envelope.header


def test_unsatisfied_policy(cp_pair, kp_pair, rng):
    pk, sk, _ = cp_pair
    with pytest.raises(PolicyNotSatisfied):
        open_envelope(pk, sk, seal(pk, "nurse", PAYLOAD, rng))

    pk, sk, _ = kp_pair
    with pytest.raises(PolicyNotSatisfied):
        open_envelope(pk, sk, seal(pk, ["doctor", "nurse"], PAYLOAD, rng))


def test_kp_string_target_is_a_single_attribute(toy, rng):
    pk, mk = kp_setup(toy, ["a", "b", "ab"], rng)
    envelope = seal(pk, "ab", PAYLOAD, rng)
    assert deserialize_kp_header(envelope.header, toy).attrs == {"ab"}

    assert open_envelope(pk, kp_keygen(pk, mk, parse_policy("ab"), rng), envelope) == PAYLOAD
    with pytest.raises(PolicyNotSatisfied):
        open_envelope(pk, kp_keygen(pk, mk, parse_policy("a and b"), rng), envelope)


def test_key_for_another_system_fails_authentication(cp_pair, params80, rng):
    pk, _, _ = cp_pair
    other_pk, other_mk = cp_setup(params80, rng)
    intruder = cp_keygen(other_pk, other_mk, ["doctor"], rng)
    with pytest.raises(AuthenticationFailure):
        open_envelope(pk, intruder, seal(pk, "doctor", PAYLOAD, rng))


def test_scheme_mismatch(cp_pair, kp_pair, rng):
    cp_pk, _, _ = cp_pair
    kp_pk, kp_sk, _ = kp_pair
    envelope = seal(cp_pk, "doctor", PAYLOAD, rng)
    with pytest.raises(MalformedEnvelope) as info:
        open_envelope(kp_pk, kp_sk, envelope)
    assert info.value.offset == 7


@pytest.mark.parametrize("part", ["nonce", "ciphertext", "tag"])
def test_tampered_payload_fields(cp_pair, params80, rng, part):
    pk, sk, _ = cp_pair
    envelope = seal(pk, "doctor", PAYLOAD, rng)
    value = getattr(envelope, part)
    tampered = Envelope(**{**envelope.__dict__, part: flip(value, 3)})
    with pytest.raises(AuthenticationFailure):
        open_envelope(pk, sk, serialize_envelope(tampered, params80.level_byte))


def test_header_digest_mismatch(cp_pair, params80, rng):
    pk, sk, _ = cp_pair
    data = serialize_envelope(seal(pk, "doctor", PAYLOAD, rng), params80.level_byte)
    corrupted = flip(data, 8 * 30)
    with pytest.raises(MalformedEnvelope) as info:
        open_envelope(pk, sk, corrupted)
    assert info.value.reason == "header digest mismatch"
    assert info.value.offset == 13


def test_header_errors_are_reported_at_envelope_offsets(toy):
    rng = ChaChaRandom("envelope-offsets")
    pk, mk = cp_setup(toy, rng)
    sk = cp_keygen(pk, mk, ["a"], rng)
    bad_header = (
        b"ABEN\x01\x05\x00"
        + b"\x00\x00\x00\x01a"
        + b"\x00\x00\x00\x02\x05\x04"
        + b"\x00\x00\x00\x02\x05\x08"
        + b"\x00\x00\x00\x02\x05\x03"
    )
    envelope = Envelope(scheme="cp", header=bad_header, nonce=b"\x00" * 12, ciphertext=b"", tag=b"\x00" * 16)
    with pytest.raises(MalformedEnvelope) as info:
        open_envelope(pk, sk, envelope)
    assert info.value.offset == 17 + 12


def test_random_single_bit_flips(toy):
    rng = ChaChaRandom("bit-flips")
    cp_pk, cp_mk = cp_setup(toy, rng)
    kp_pk, kp_mk = kp_setup(toy, ["a", "b", "c"], rng)
    targets = [
        (cp_pk, cp_keygen(cp_pk, cp_mk, ["a", "b"], rng), seal(cp_pk, "a and (b or c)", PAYLOAD, rng)),
        (kp_pk, kp_keygen(kp_pk, kp_mk, parse_policy("a and (b or c)"), rng), seal(kp_pk, ["a", "b"], PAYLOAD, rng)),
    ]

    for pk, sk, envelope in targets:
        data = serialize_envelope(envelope, toy.level_byte)
        assert open_envelope(pk, sk, data) == PAYLOAD
        for _ in range(500):
            with pytest.raises((AuthenticationFailure, MalformedEnvelope)):
                open_envelope(pk, sk, flip(data, rng.randrange(8 * len(data))))


def test_every_bit_of_a_small_envelope(toy):
    rng = ChaChaRandom("every-bit")
    pk, mk = cp_setup(toy, rng)
    sk = cp_keygen(pk, mk, ["a"], rng)
    data = serialize_envelope(seal(pk, "a", b"x", rng), toy.level_byte)
    for bit in range(8 * len(data)):
        with pytest.raises((AuthenticationFailure, MalformedEnvelope)):
            open_envelope(pk, sk, flip(data, bit))


def test_derive_key_is_a_hash_of_the_element(params80):
    element = GtElement(Fp2(3, 4, params80.q))
    key = derive_key(element)
    assert len(key) == 32
    assert key == derive_key(GtElement(Fp2(3, 4, params80.q)))
    assert key != derive_key(GtElement(Fp2(4, 3, params80.q)))
    assert KDF_TAG == b"ABEN-KDF-v1"


def test_derive_key_warns_on_the_identity(toy, caplog):
    with caplog.at_level(logging.WARNING, logger="aben.envelope.hybrid"):
        derive_key(GtElement.one(toy.q))
    assert "identity element" in caplog.text
