from itertools import combinations

import pytest

from aben.errors import (
    DuplicateUniverseAttribute,
    EmptyAttributeSet,
    InvalidAttribute,
    PolicyNotSatisfied,
    SchemeError,
    UnknownAttribute,
)
from aben.pairing import pairing, scalar_mul
from aben.policy import AccessTree, Gate, Leaf, parse_policy, satisfies
from aben.schemes import KpMasterKey, KpPrivateKey, kp_decrypt, kp_encrypt, kp_keygen, kp_setup
from aben.utils.rng import ChaChaRandom

from treegen import all_policies, random_policy

ALPHABET = ("a", "b", "c", "d", "e", "f")


def nonempty_subsets(items):
    return [set(combo) for k in range(1, len(items) + 1) for combo in combinations(items, k)]


@pytest.fixture(scope="module")
def kp80(params80):
    return kp_setup(params80, ALPHABET, ChaChaRandom("kp-setup"))


@pytest.fixture(scope="module")
def kp_system(leveled):
    level, params = leveled
    return (level, *kp_setup(params, ALPHABET, ChaChaRandom(f"kp-setup:{level}")))


def test_setup_publishes_consistent_values(params80, kp80):
    pk, mk = kp80
    assert pk.universe == ALPHABET
    assert pk.component_count == len(ALPHABET) + 1
    for t, image in zip(mk.t_values, pk.t_images):
        assert image == scalar_mul(t, params80.g)
    assert pk.y_image == pairing(params80.g, params80.g, params80) ** mk.y_value


def test_round_trip_or_of_and(kp80, rng):
    pk, mk = kp80
    sk = kp_keygen(pk, mk, parse_policy("(a and b) or c"), rng)
    for attrs in ({"a", "b"}, {"c"}, {"a", "b", "c"}, {"c", "f"}):
        header, key = kp_encrypt(pk, attrs, rng)
        assert kp_decrypt(pk, sk, header) == key


def test_randomized_round_trips(kp_system):
    level, pk, mk = kp_system
    rng = ChaChaRandom(f"kp-round-trips:{level}")
    done = 0
    while done < 50:
        policy = random_policy(rng, ALPHABET, max_leaves=5)
        attrs = {name for name in ALPHABET if rng.random() < 0.6} or {"a"}
        if not satisfies(policy, attrs):
            continue
        header, key = kp_encrypt(pk, attrs, rng)
        assert kp_decrypt(pk, kp_keygen(pk, mk, policy, rng), header) == key
        done += 1


def test_randomized_non_satisfying_headers_are_refused(kp_system):
    level, pk, mk = kp_system
    rng = ChaChaRandom(f"kp-refusals:{level}")
    done = 0
    while done < 50:
        policy = random_policy(rng, ALPHABET, max_leaves=5)
        attrs = {name for name in ALPHABET if rng.random() < 0.3} or {"f"}
        if satisfies(policy, attrs):
            continue
        header, _ = kp_encrypt(pk, attrs, rng)
        with pytest.raises(PolicyNotSatisfied):
            kp_decrypt(pk, kp_keygen(pk, mk, policy, rng), header)
        done += 1


def test_exhaustive_toy_sweep(toy):
    rng = ChaChaRandom("kp-toy-sweep")
    alphabet = ("a", "b", "c")
    pk, mk = kp_setup(toy, alphabet, rng)
    headers = [kp_encrypt(pk, attrs, rng) for attrs in nonempty_subsets(alphabet)]

    for policy in all_policies(3, alphabet):
        sk = kp_keygen(pk, mk, policy, rng)
        for header, key in headers:
            if satisfies(policy, header.attrs):
                assert kp_decrypt(pk, sk, header) == key, (policy.render(), sorted(header.attrs))
            else:
                with pytest.raises(PolicyNotSatisfied):
                    kp_decrypt(pk, sk, header)


@pytest.mark.parametrize("n", [1, 5, 10, 30])
def test_component_counts(params80, rng, n):
    names = [f"a{i}" for i in range(1, n + 1)]
    pk, mk = kp_setup(params80, names, rng)
    policy = AccessTree(Gate(n, tuple(Leaf(name) for name in names)))
    sk = kp_keygen(pk, mk, policy, rng)
    header, key = kp_encrypt(pk, names, rng)
    assert sk.component_count == n
    assert header.component_count == n
    assert pk.component_count == n + 1
    assert kp_decrypt(pk, sk, header) == key


def test_colluding_keys_cannot_combine(kp80, rng):
    pk, mk = kp80
    header, key = kp_encrypt(pk, ["a", "b"], rng)
    alice = kp_keygen(pk, mk, parse_policy("a and c"), rng)
    bob = kp_keygen(pk, mk, parse_policy("b and d"), rng)

    for sk in (alice, bob):
        with pytest.raises(PolicyNotSatisfied):
            kp_decrypt(pk, sk, header)

    merged = KpPrivateKey(
        policy=parse_policy("a and b"),
        components={(1,): alice.components[(1,)], (2,): bob.components[(1,)]},
    )
    assert kp_decrypt(pk, merged, header) != key


def test_unknown_attributes_are_rejected(kp80, rng):
    pk, mk = kp80
    with pytest.raises(UnknownAttribute):
        kp_encrypt(pk, ["a", "zzz"], rng)
    with pytest.raises(UnknownAttribute):
        kp_keygen(pk, mk, parse_policy("a or zzz"), rng)
    assert pk.index_of("c") == 2


def test_setup_rejects_bad_universes(toy, rng):
    with pytest.raises(EmptyAttributeSet):
        kp_setup(toy, [], rng)
    with pytest.raises(DuplicateUniverseAttribute):
        kp_setup(toy, ["a", "b", "a"], rng)
    with pytest.raises(InvalidAttribute):
        kp_setup(toy, ["a", "not valid"], rng)


def test_a_string_names_a_single_attribute(toy, rng):
    pk, _ = kp_setup(toy, "ab", rng)
    assert pk.universe == ("ab",)

    pk, _ = kp_setup(toy, ["a", "b", "ab"], rng)
    header, _ = kp_encrypt(pk, "ab", rng)
    assert header.attrs == {"ab"}


def test_encrypt_rejects_an_empty_set(kp80, rng):
    pk, _ = kp80
    with pytest.raises(EmptyAttributeSet):
        kp_encrypt(pk, [], rng)


def test_object_invariants(kp80, rng):
    pk, mk = kp80
    with pytest.raises(SchemeError):
        KpMasterKey(t_values=(1, 0), y_value=5)

    sk = kp_keygen(pk, mk, parse_policy("a and b"), rng)
    with pytest.raises(SchemeError):
        KpPrivateKey(policy=sk.policy, components={(1,): sk.components[(1,)]})


def test_keygen_is_reproducible_from_the_seed(kp80):
    pk, mk = kp80
    policy = parse_policy("2 of (a, b, c)")
    assert kp_keygen(pk, mk, policy, ChaChaRandom(3)) == kp_keygen(pk, mk, policy, ChaChaRandom(3))