from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from aben.errors import DuplicateEvaluationPoint, PolicyError
from aben.policy.satisfy import PrunedGate, PrunedLeaf, PrunedNode
from aben.policy.tree import AccessNode, AccessTree, Leaf, Position


@dataclass(frozen=True)
class ShareMap:
    root_secret: int
    shares: Mapping[Position, int] = field(default_factory=dict)

    def __getitem__(self, position: Position) -> int:
        return self.shares[position]

    def __len__(self) -> int:
        return len(self.shares)


def share_secret(
    tree: AccessTree,
    secret: int,
    rng: random.Random,
    r: int,
) -> ShareMap:
    """Split ``secret`` top-down: each k-of-n gate gets a random degree k-1
    polynomial over Z_r whose constant term is the value it inherited, and
    child i inherits that polynomial evaluated at i."""

    if not 0 <= secret < r:
        raise PolicyError("secret must lie in [0, r)")

    shares: dict[Position, int] = {}
    _share_node(tree.root, secret, (), rng, r, shares)
    return ShareMap(root_secret=secret, shares=shares)


def lagrange_coeff(i: int, points: Iterable[int], r: int) -> int:
    """Delta_{i,S}(0) = prod_{j in S, j != i} (0 - j) / (i - j) mod r."""

    S = list(points)
    residues = [point % r for point in S]
    if len(set(residues)) != len(residues):
        raise DuplicateEvaluationPoint(
            f"evaluation points {S} are not distinct modulo r"
        )
    if i not in S:
        raise PolicyError(f"evaluation point {i} is not in {S}")

    numerator = 1
    denominator = 1
    for j in S:
        if j == i:
            continue
        numerator = numerator * (-j) % r
        denominator = denominator * (i - j) % r
    return numerator * pow(denominator, -1, r) % r


def leaf_coefficients(pruned: PrunedNode, r: int) -> dict[Position, int]:
    """Product of Lagrange coefficients along each root-to-leaf path.

    Interpolating a sharing at the root equals the sum over selected
    leaves of coefficient * share.
    """

    coefficients: dict[Position, int] = {}
    _collect_coefficients(pruned, 1, r, coefficients)
    return coefficients


def reconstruct_secret(pruned: PrunedNode, shares: ShareMap, r: int) -> int:
    coefficients = leaf_coefficients(pruned, r)
    return sum(coefficients[position] * shares[position] for position in coefficients) % r


def _share_node(
    node: AccessNode,
    value: int,
    position: Position,
    rng: random.Random,
    r: int,
    shares: dict[Position, int],
) -> None:
    if isinstance(node, Leaf):
        shares[position] = value
        return

    n = len(node.children)
    if n > r:
        raise DuplicateEvaluationPoint(
            f"gate at {position} has {n} children but only {r} distinct points mod r"
        )

    coefficients = [value] + [rng.randrange(r) for _ in range(node.threshold - 1)]
    for index, child in enumerate(node.children, start=1):
        _share_node(child, _evaluate(coefficients, index, r), position + (index,), rng, r, shares)


def _evaluate(coefficients: list[int], x: int, r: int) -> int:
    result = 0
    for coefficient in reversed(coefficients):
        result = (result * x + coefficient) % r
    return result


def _collect_coefficients(
    node: PrunedNode,
    multiplier: int,
    r: int,
    out: dict[Position, int],
) -> None:
    if isinstance(node, PrunedLeaf):
        out[node.position] = multiplier
        return

    assert isinstance(node, PrunedGate)
    indices = node.indices
    for index, child in node.children:
        coefficient = lagrange_coeff(index, indices, r)
        _collect_coefficients(child, multiplier * coefficient % r, r, out)
