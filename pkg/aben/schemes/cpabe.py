"""Ciphertext-policy ABE as a key encapsulation mechanism.

Public key ``(g, h = g^beta, e(g,g)^alpha)``, master key ``(beta, g^alpha)``.
Keys carry an attribute set, headers carry an access tree; decryption
recovers ``e(g,g)^(alpha*s)`` which the envelope layer turns into a
symmetric key.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from aben.errors import EmptyAttributeSet, NotSatisfied, PolicyNotSatisfied, SchemeError
from aben.pairing import (
    CurvePoint,
    GroupParams,
    GtElement,
    hash_to_group,
    pairing,
    pairing_product,
    scalar_mul,
)
from aben.policy import (
    AccessTree,
    AttributeSet,
    Position,
    leaf_coefficients,
    pruned_leaves,
    select_satisfying_subtree,
    share_secret,
)
from aben.utils.rng import random_scalar

logger = logging.getLogger(__name__)

PointPair = tuple[CurvePoint, CurvePoint]


@dataclass(frozen=True)
class CpPublicParams:
    params: GroupParams
    g: CurvePoint
    h_point: CurvePoint
    egg_alpha: GtElement

    @property
    def component_count(self) -> int:
        return 3


@dataclass(frozen=True)
class CpMasterKey:
    beta: int
    g_alpha: CurvePoint

    def __post_init__(self) -> None:
        if self.beta == 0:
            raise SchemeError("master key beta must be nonzero")


@dataclass(frozen=True)
class CpPrivateKey:
    d: CurvePoint
    # attribute j -> (g^u * H(j)^u_j, g^u_j)
    pairs: Mapping[str, PointPair]
    attrs: AttributeSet

    def __post_init__(self) -> None:
        if set(self.pairs) != set(self.attrs):
            raise SchemeError("key components do not match the key's attribute set")

    @property
    def component_count(self) -> int:
        return 2 * len(self.pairs) + 1


@dataclass(frozen=True)
class CpHeader:
    c: CurvePoint
    # leaf position -> (g^q_y(0), H(att(y))^q_y(0))
    pairs: Mapping[Position, PointPair]
    policy: AccessTree

    def __post_init__(self) -> None:
        if set(self.pairs) != {position for position, _ in self.policy.leaves()}:
            raise SchemeError("header components do not match the policy's leaves")

    @property
    def component_count(self) -> int:
        return 2 * len(self.pairs) + 1


def cp_setup(params: GroupParams, rng: random.Random) -> tuple[CpPublicParams, CpMasterKey]:
    alpha = random_scalar(rng, params.r, nonzero=True)
    beta = random_scalar(rng, params.r, nonzero=True)

    g = params.g
    g_alpha = scalar_mul(alpha, g)
    pk = CpPublicParams(
        params=params,
        g=g,
        h_point=scalar_mul(beta, g),
        egg_alpha=pairing(g_alpha, g, params, check_subgroup=False),
    )
    return pk, CpMasterKey(beta=beta, g_alpha=g_alpha)


def cp_keygen(
    pk: CpPublicParams,
    mk: CpMasterKey,
    attrs: Iterable[str],
    rng: random.Random,
) -> CpPrivateKey:
    attrs = AttributeSet(attrs)
    if not attrs:
        raise EmptyAttributeSet("a private key needs at least one attribute")

    params = pk.params
    r = params.r
    u = random_scalar(rng, r)
    g_u = scalar_mul(u, pk.g)

    beta_inv = pow(mk.beta, -1, r)
    d = scalar_mul(beta_inv, mk.g_alpha + g_u)

    pairs: dict[str, PointPair] = {}
    for attribute in sorted(attrs):
        u_j = random_scalar(rng, r)
        hashed = hash_to_group(attribute, params)
        pairs[attribute] = (g_u + scalar_mul(u_j, hashed), scalar_mul(u_j, pk.g))

    logger.debug("issued cp key over %d attributes", len(attrs))
    return CpPrivateKey(d=d, pairs=pairs, attrs=attrs)


def cp_encrypt(
    pk: CpPublicParams,
    policy: AccessTree,
    rng: random.Random,
) -> tuple[CpHeader, GtElement]:
    params = pk.params
    s = random_scalar(rng, params.r)
    shares = share_secret(policy, s, rng, params.r)

    hashed: dict[str, CurvePoint] = {}
    pairs: dict[Position, PointPair] = {}
    for position, attribute in policy.leaves():
        if attribute not in hashed:
            hashed[attribute] = hash_to_group(attribute, params)
        share = shares[position]
        pairs[position] = (scalar_mul(share, pk.g), scalar_mul(share, hashed[attribute]))

    header = CpHeader(c=scalar_mul(s, pk.h_point), pairs=pairs, policy=policy)
    return header, pk.egg_alpha**s


def cp_decrypt(pk: CpPublicParams, sk: CpPrivateKey, header: CpHeader) -> GtElement:
    params = pk.params

    try:
        pruned = select_satisfying_subtree(header.policy, sk.attrs)
    except NotSatisfied as exc:
        raise PolicyNotSatisfied(
            f"key attributes do not satisfy policy '{header.policy}'"
        ) from exc

    coefficients = leaf_coefficients(pruned, params.r)

    # points come from key generation or from decoding, both subgroup-checked
    blinding = GtElement.one(params.q)
    for leaf in pruned_leaves(pruned):
        d_j, d_j_prime = sk.pairs[leaf.attribute]
        c_y, c_y_prime = header.pairs[leaf.position]
        f_y = pairing_product(
            [(d_j, c_y), (-d_j_prime, c_y_prime)],
            params,
            check_subgroup=False,
        )
        blinding = blinding * f_y ** coefficients[leaf.position]

    return pairing(header.c, sk.d, params, check_subgroup=False) / blinding
