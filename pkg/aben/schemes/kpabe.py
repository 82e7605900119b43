"""Key-policy ABE over a small attribute universe fixed at setup."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from aben.errors import (
    DuplicateUniverseAttribute,
    EmptyAttributeSet,
    NotSatisfied,
    PolicyNotSatisfied,
    SchemeError,
    UnknownAttribute,
)
from aben.pairing import CurvePoint, GroupParams, GtElement, pairing, scalar_mul
from aben.policy import (
    AccessTree,
    AttributeSet,
    Position,
    leaf_coefficients,
    pruned_leaves,
    select_satisfying_subtree,
    share_secret,
)
from aben.policy.tree import validate_attribute
from aben.utils.rng import random_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KpPublicParams:
    params: GroupParams
    universe: tuple[str, ...]
    t_images: tuple[CurvePoint, ...]
    y_image: GtElement

    def __post_init__(self) -> None:
        if len(self.universe) != len(self.t_images):
            raise SchemeError("one public component is required per universe attribute")

    def index_of(self, attribute: str) -> int:
        try:
            return self.universe.index(attribute)
        except ValueError:
            raise UnknownAttribute(
                f"attribute '{attribute}' is not in the universe"
            ) from None

    @property
    def component_count(self) -> int:
        return len(self.t_images) + 1


@dataclass(frozen=True)
class KpMasterKey:
    t_values: tuple[int, ...]
    y_value: int

    def __post_init__(self) -> None:
        if any(t == 0 for t in self.t_values):
            raise SchemeError("attribute secrets must be nonzero")


@dataclass(frozen=True)
class KpPrivateKey:
    policy: AccessTree
    # leaf position -> g^(q_x(0) / t_att(x))
    components: Mapping[Position, CurvePoint]

    def __post_init__(self) -> None:
        if set(self.components) != {position for position, _ in self.policy.leaves()}:
            raise SchemeError("key components do not match the policy's leaves")

    @property
    def component_count(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class KpHeader:
    attrs: AttributeSet
    # attribute -> T_i^s
    components: Mapping[str, CurvePoint]

    def __post_init__(self) -> None:
        if set(self.components) != set(self.attrs):
            raise SchemeError("header components do not match the header's attribute set")

    @property
    def component_count(self) -> int:
        return len(self.components)


def kp_setup(
    params: GroupParams,
    universe: Sequence[str],
    rng: random.Random,
) -> tuple[KpPublicParams, KpMasterKey]:
    if isinstance(universe, str):
        universe = (universe,)
    universe = tuple(validate_attribute(name) for name in universe)
    if not universe:
        raise EmptyAttributeSet("the attribute universe must not be empty")

    seen: set[str] = set()
    for name in universe:
        if name in seen:
            raise DuplicateUniverseAttribute(f"attribute '{name}' appears twice in the universe")
        seen.add(name)

    r = params.r
    t_values = tuple(random_scalar(rng, r, nonzero=True) for _ in universe)
    y_value = random_scalar(rng, r, nonzero=True)

    egg = pairing(params.g, params.g, params, check_subgroup=False)
    pk = KpPublicParams(
        params=params,
        universe=universe,
        t_images=tuple(scalar_mul(t, params.g) for t in t_values),
        y_image=egg**y_value,
    )
    logger.debug("kp setup over a universe of %d attributes", len(universe))
    return pk, KpMasterKey(t_values=t_values, y_value=y_value)


def kp_encrypt(
    pk: KpPublicParams,
    attrs: Iterable[str],
    rng: random.Random,
) -> tuple[KpHeader, GtElement]:
    attrs = AttributeSet(attrs)
    if not attrs:
        raise EmptyAttributeSet("a ciphertext needs at least one attribute")
    indices = {attribute: pk.index_of(attribute) for attribute in attrs}

    s = random_scalar(rng, pk.params.r)
    components = {
        attribute: scalar_mul(s, pk.t_images[index])
        for attribute, index in sorted(indices.items())
    }
    return KpHeader(attrs=attrs, components=components), pk.y_image**s


def kp_keygen(
    pk: KpPublicParams,
    mk: KpMasterKey,
    policy: AccessTree,
    rng: random.Random,
) -> KpPrivateKey:
    r = pk.params.r
    leaves = policy.leaves()
    indices = {position: pk.index_of(attribute) for position, attribute in leaves}

    shares = share_secret(policy, mk.y_value, rng, r)

    components: dict[Position, CurvePoint] = {}
    for position, _ in leaves:
        t_inv = pow(mk.t_values[indices[position]], -1, r)
        components[position] = scalar_mul(shares[position] * t_inv % r, pk.params.g)

    return KpPrivateKey(policy=policy, components=components)


def kp_decrypt(pk: KpPublicParams, sk: KpPrivateKey, header: KpHeader) -> GtElement:
    params = pk.params

    try:
        pruned = select_satisfying_subtree(sk.policy, header.attrs)
    except NotSatisfied as exc:
        raise PolicyNotSatisfied(
            f"header attributes do not satisfy key policy '{sk.policy}'"
        ) from exc

    coefficients = leaf_coefficients(pruned, params.r)

    result = GtElement.one(params.q)
    for leaf in pruned_leaves(pruned):
        f_x = pairing(
            sk.components[leaf.position],
            header.components[leaf.attribute],
            params,
            check_subgroup=False,
        )
        result = result * f_x ** coefficients[leaf.position]
    return result
