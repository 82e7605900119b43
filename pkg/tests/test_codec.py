import pytest

from aben.envelope import (
    ObjectType,
    deserialize_cp_header,
    deserialize_cp_key,
    deserialize_cp_master,
    deserialize_cp_public,
    deserialize_kp_header,
    deserialize_kp_key,
    deserialize_kp_master,
    deserialize_kp_public,
    deserialize_params,
    peek_object,
    serialize_cp_header,
    serialize_cp_key,
    serialize_cp_master,
    serialize_cp_public,
    serialize_kp_header,
    serialize_kp_key,
    serialize_kp_master,
    serialize_kp_public,
    serialize_params,
)
from aben.envelope.codec import Reader, Writer, field_width
from aben.errors import DecodeError, MalformedEnvelope, MalformedKey
from aben.policy import AccessTree, Gate, Leaf, parse_policy
from aben.schemes import CpHeader, cp_encrypt, cp_keygen, cp_setup, kp_encrypt, kp_keygen, kp_setup
from aben.utils.rng import ChaChaRandom

from treegen import random_policy

ALPHABET = ("a", "b", "c", "d")


def chain_policy(n: int) -> AccessTree:
    return AccessTree(Gate(n, tuple(Leaf(f"a{i}") for i in range(1, n + 1))))


def toy_objects(toy, seed="codec-objects"):
    """Every serializable object at toy size, with its decoder and error class."""
    rng = ChaChaRandom(seed)
    cp_pk, cp_mk = cp_setup(toy, rng)
    kp_pk, kp_mk = kp_setup(toy, ALPHABET, rng)
    policy = parse_policy("2 of (a, b or c, d)")

    cp_sk = cp_keygen(cp_pk, cp_mk, ["a", "c"], rng)
    cp_header, _ = cp_encrypt(cp_pk, policy, rng)
    kp_sk = kp_keygen(kp_pk, kp_mk, policy, rng)
    kp_header, _ = kp_encrypt(kp_pk, ["a", "d"], rng)

    return {
        "params": (toy, serialize_params(toy), deserialize_params, MalformedKey),
        "cp_public": (cp_pk, serialize_cp_public(cp_pk), deserialize_cp_public, MalformedKey),
        "cp_master": (
            cp_mk,
            serialize_cp_master(cp_mk, toy),
            lambda data: deserialize_cp_master(data, toy),
            MalformedKey,
        ),
        "cp_key": (
            cp_sk,
            serialize_cp_key(cp_sk, toy),
            lambda data: deserialize_cp_key(data, toy),
            MalformedKey,
        ),
        "cp_header": (
            cp_header,
            serialize_cp_header(cp_header, toy),
            lambda data: deserialize_cp_header(data, toy),
            MalformedEnvelope,
        ),
        "kp_public": (kp_pk, serialize_kp_public(kp_pk), deserialize_kp_public, MalformedKey),
        "kp_master": (
            kp_mk,
            serialize_kp_master(kp_mk, toy),
            lambda data: deserialize_kp_master(data, toy),
            MalformedKey,
        ),
        "kp_key": (
            kp_sk,
            serialize_kp_key(kp_sk, toy),
            lambda data: deserialize_kp_key(data, toy),
            MalformedKey,
        ),
        "kp_header": (
            kp_header,
            serialize_kp_header(kp_header, toy),
            lambda data: deserialize_kp_header(data, toy),
            MalformedEnvelope,
        ),
    }


KINDS = [
    "params",
    "cp_public",
    "cp_master",
    "cp_key",
    "cp_header",
    "kp_public",
    "kp_master",
    "kp_key",
    "kp_header",
]


@pytest.mark.parametrize("kind", KINDS)
def test_round_trip(toy, kind):
    obj, data, decode, _ = toy_objects(toy)[kind]
    assert decode(data) == obj


@pytest.mark.parametrize("kind", KINDS)
def test_every_truncation_is_rejected(toy, kind):
    _, data, decode, error = toy_objects(toy)[kind]
    for cut in range(len(data)):
        with pytest.raises(error):
            decode(data[:cut])


@pytest.mark.parametrize("kind", KINDS)
def test_trailing_bytes_are_rejected(toy, kind):
    _, data, decode, error = toy_objects(toy)[kind]
    with pytest.raises(error) as info:
        decode(data + b"\x00\x00\x00\x00")
    assert info.value.offset == len(data)


def test_random_objects_round_trip(toy):
    for seed in range(100):
        for obj, data, decode, _ in toy_objects(toy, seed=seed).values():
            assert decode(data) == obj


def test_random_headers_round_trip_at_80_bits(params80):
    rng = ChaChaRandom("codec-80")
    cp_pk, cp_mk = cp_setup(params80, rng)
    kp_pk, _ = kp_setup(params80, ALPHABET, rng)
    assert deserialize_cp_public(serialize_cp_public(cp_pk)) == cp_pk
    assert deserialize_kp_public(serialize_kp_public(kp_pk)) == kp_pk

    for _ in range(10):
        header, _ = cp_encrypt(cp_pk, random_policy(rng, ALPHABET, max_leaves=5), rng)
        assert deserialize_cp_header(serialize_cp_header(header, params80), params80) == header

        attrs = [name for name in ALPHABET if rng.random() < 0.5] or ["a"]
        header, _ = kp_encrypt(kp_pk, attrs, rng)
        assert deserialize_kp_header(serialize_kp_header(header, params80), params80) == header

    sk = cp_keygen(cp_pk, cp_mk, ALPHABET, rng)
    assert deserialize_cp_key(serialize_cp_key(sk, params80), params80) == sk


@pytest.mark.parametrize("n", [1, 5, 10])
def test_header_size_formulas(params80, n):
    rng = ChaChaRandom(f"sizes-{n}")
    width = params80.field_bytes
    assert width == 64

    cp_pk, _ = cp_setup(params80, rng)
    policy = chain_policy(n)
    header, _ = cp_encrypt(cp_pk, policy, rng)
    text = policy.render()
    assert len(serialize_cp_header(header, params80)) == 7 + 4 + len(text) + (2 * n + 1) * (4 + 2 * width)

    names = [f"a{i}" for i in range(1, n + 1)]
    kp_pk, _ = kp_setup(params80, names, rng)
    header, _ = kp_encrypt(kp_pk, names, rng)
    expected = 7 + 8 + sum(4 + len(name) + 4 + 2 * width for name in names)
    assert len(serialize_kp_header(header, params80)) == expected


@pytest.mark.slow
@pytest.mark.parametrize("level, width", [("params112", 128), ("params128", 192)])
def test_header_size_formulas_at_higher_levels(request, level, width):
    params = request.getfixturevalue(level)
    assert params.field_bytes == width
    rng = ChaChaRandom(f"sizes-{level}")
    cp_pk, _ = cp_setup(params, rng)
    for n in (1, 5, 10):
        policy = chain_policy(n)
        header, _ = cp_encrypt(cp_pk, policy, rng)
        size = 7 + 4 + len(policy.render()) + (2 * n + 1) * (4 + 2 * width)
        assert len(serialize_cp_header(header, params)) == size


def test_field_width():
    assert field_width(11) == 1
    assert field_width(255) == 1
    assert field_width(256) == 2


def test_infinity_is_an_empty_field(toy):
    policy = parse_policy("a")
    inf = toy.infinity()
    header = CpHeader(c=inf, pairs={(): (toy.g, inf)}, policy=policy)
    data = serialize_cp_header(header, toy)
    assert data.endswith(b"\x00\x00\x00\x00")
    assert deserialize_cp_header(data, toy) == header


def test_peek_object(toy):
    data = serialize_params(toy)
    assert peek_object(data) == (ObjectType.PARAMS, 0)


@pytest.mark.parametrize(
    "data, offset",
    [
        (b"ABE", 3),
        (b"ABEX\x01\x01\x00", 0),
        (b"ABEN\x02\x01\x00", 4),
        (b"ABEN\x01\x0b\x00", 5),
    ],
)
def test_preamble_errors(data, offset):
    with pytest.raises(MalformedEnvelope) as info:
        peek_object(data)
    assert info.value.offset == offset


def test_wrong_object_type_is_reported_at_the_type_byte(toy):
    data = serialize_params(toy)
    with pytest.raises(MalformedKey) as info:
        deserialize_cp_key(data, toy)
    assert info.value.offset == 5


def test_level_mismatch_is_reported_at_the_level_byte(toy, params80):
    rng = ChaChaRandom("level-mismatch")
    pk, _ = cp_setup(toy, rng)
    header, _ = cp_encrypt(pk, parse_policy("a"), rng)
    with pytest.raises(MalformedEnvelope) as info:
        deserialize_cp_header(serialize_cp_header(header, toy), params80)
    assert info.value.offset == 6


def _toy_header(c: bytes) -> bytes:
    return (
        b"ABEN\x01\x05\x00"
        + b"\x00\x00\x00\x01a"
        + b"\x00\x00\x00\x02" + c
        + b"\x00\x00\x00\x02\x05\x08"
        + b"\x00\x00\x00\x02\x05\x03"
    )


@pytest.mark.parametrize(
    "c, reason",
    [
        (b"\x05\x04", "not on the curve"),
        (b"\x07\x03", "order-r subgroup"),
        (b"\x0c\x03", "not reduced"),
    ],
)
def test_bad_points_are_rejected(toy, c, reason):
    with pytest.raises(MalformedEnvelope, match=reason) as info:
        deserialize_cp_header(_toy_header(c), toy)
    assert info.value.offset == 12


def test_bad_policy_text_is_a_decode_error(toy):
    data = b"ABEN\x01\x05\x00" + b"\x00\x00\x00\x05a and"
    with pytest.raises(MalformedEnvelope) as info:
        deserialize_cp_header(data, toy)
    assert info.value.offset == 7


DEEP_POLICY = "(" * 2000 + "a" + ")" * 2000


def test_deeply_nested_policy_in_a_header_is_a_decode_error(toy):
    data = Writer(ObjectType.CP_HEADER, 0, 1).text(DEEP_POLICY).getvalue()
    with pytest.raises(MalformedEnvelope, match="nests deeper") as info:
        deserialize_cp_header(data, toy)
    assert info.value.offset == 7


def test_deeply_nested_policy_in_a_key_is_a_decode_error(toy):
    data = Writer(ObjectType.KP_KEY, 0, 1).text(DEEP_POLICY).getvalue()
    with pytest.raises(MalformedKey, match="nests deeper") as info:
        deserialize_kp_key(data, toy)
    assert info.value.offset == 7


def test_duplicate_key_attributes_are_rejected(toy):
    writer = Writer(ObjectType.KP_HEADER, 0, 1).count(2)
    writer.text("a").point(toy.g).text("a").point(toy.g)
    with pytest.raises(MalformedEnvelope, match="appears twice"):
        deserialize_kp_header(writer.getvalue(), toy)


def test_reader_reports_oversized_counts(toy):
    data = Writer(ObjectType.KP_HEADER, 0, 1).count(1000).getvalue()
    with pytest.raises(MalformedEnvelope, match="exceeds remaining input"):
        deserialize_kp_header(data, toy)


def test_reader_requires_exact_field_sizes(toy):
    data = Writer(ObjectType.CP_MASTER, 0, 1).field(b"\x01\x01").getvalue()
    reader = Reader(data, ObjectType.CP_MASTER, MalformedKey, toy)
    with pytest.raises(DecodeError, match="expected a 1-byte field"):
        reader.scalar()


def test_decode_errors_name_their_offset():
    error = MalformedKey("bad", offset=9)
    assert error.offset == 9
    assert "offset 9" in str(error)
    assert error.exit_code == 41
