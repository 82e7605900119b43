from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Optional, Union

from aben.errors import NotSatisfied
from aben.policy.tree import AccessNode, AccessTree, Gate, Leaf, Position


@dataclass(frozen=True)
class PrunedLeaf:
    position: Position
    attribute: str

    @property
    def leaf_count(self) -> int:
        return 1


@dataclass(frozen=True)
class PrunedGate:
    position: Position
    # (1-based child index in the original gate, pruned child)
    children: tuple[tuple[int, PrunedNode], ...]
    leaf_count: int

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(index for index, _ in self.children)


PrunedNode = Union[PrunedLeaf, PrunedGate]


def satisfies(tree: AccessTree, attrs: AbstractSet[str]) -> bool:
    return _satisfies(tree.root, attrs)


def select_satisfying_subtree(tree: AccessTree, attrs: AbstractSet[str]) -> PrunedNode:
    """Keep exactly k satisfied children per gate, fewest leaves first.

    Ties go to the lower child index, so the selection is deterministic.
    """

    pruned = _prune(tree.root, attrs, ())
    if pruned is None:
        raise NotSatisfied("attribute set does not satisfy the policy")
    return pruned


def pruned_leaves(node: PrunedNode) -> list[PrunedLeaf]:
    if isinstance(node, PrunedLeaf):
        return [node]
    leaves: list[PrunedLeaf] = []
    for _, child in node.children:
        leaves.extend(pruned_leaves(child))
    return leaves


def _satisfies(node: AccessNode, attrs: AbstractSet[str]) -> bool:
    if isinstance(node, Leaf):
        return node.attribute in attrs
    satisfied = sum(1 for child in node.children if _satisfies(child, attrs))
    return satisfied >= node.threshold


def _prune(
    node: AccessNode,
    attrs: AbstractSet[str],
    position: Position,
) -> Optional[PrunedNode]:
    if isinstance(node, Leaf):
        if node.attribute in attrs:
            return PrunedLeaf(position, node.attribute)
        return None

    assert isinstance(node, Gate)
    candidates: list[tuple[int, PrunedNode]] = []
    for index, child in enumerate(node.children, start=1):
        pruned = _prune(child, attrs, position + (index,))
        if pruned is not None:
            candidates.append((index, pruned))

    if len(candidates) < node.threshold:
        return None

    chosen = sorted(candidates, key=lambda item: (item[1].leaf_count, item[0]))
    chosen = sorted(chosen[: node.threshold], key=lambda item: item[0])
    return PrunedGate(
        position=position,
        children=tuple(chosen),
        leaf_count=sum(child.leaf_count for _, child in chosen),
    )
