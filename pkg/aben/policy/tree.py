from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from aben.errors import InvalidAttribute, ThresholdOutOfRange

ATTRIBUTE_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
KEYWORDS = frozenset({"and", "or", "of"})

# 1-based child indices from the root; () is the root itself
Position = tuple[int, ...]


def validate_attribute(name: str) -> str:
    if not isinstance(name, str) or not ATTRIBUTE_PATTERN.fullmatch(name):
        raise InvalidAttribute(f"invalid attribute name: {name!r}")
    if name in KEYWORDS:
        raise InvalidAttribute(f"attribute name is a reserved word: {name!r}")
    return name


class AttributeSet(frozenset):
    """Immutable set of validated, case-sensitive attribute names."""

    def __new__(cls, attributes: Union[str, Iterable[str]] = ()) -> AttributeSet:
        if isinstance(attributes, str):
            attributes = (attributes,)
        items = [validate_attribute(name) for name in attributes]
        return super().__new__(cls, items)

    def __repr__(self) -> str:
        return f"AttributeSet({sorted(self)!r})"


@dataclass(frozen=True)
class Leaf:
    attribute: str

    def __post_init__(self) -> None:
        validate_attribute(self.attribute)


@dataclass(frozen=True)
class Gate:
    threshold: int
    children: tuple[AccessNode, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise ThresholdOutOfRange("a gate needs at least one child")
        if not 1 <= self.threshold <= len(self.children):
            raise ThresholdOutOfRange(
                f"threshold {self.threshold} outside 1..{len(self.children)}"
            )


AccessNode = Union[Leaf, Gate]


@dataclass(frozen=True)
class AccessTree:
    root: AccessNode

    def leaves(self) -> list[tuple[Position, str]]:
        """Leaves in depth-first, left-to-right order with their positions."""
        return list(_walk_leaves(self.root, ()))

    @property
    def leaf_count(self) -> int:
        return sum(1 for _ in _walk_leaves(self.root, ()))

    def attributes(self) -> AttributeSet:
        return AttributeSet(attribute for _, attribute in _walk_leaves(self.root, ()))

    def node_at(self, position: Position) -> AccessNode:
        node = self.root
        for index in position:
            if not isinstance(node, Gate):
                raise KeyError(position)
            node = node.children[index - 1]
        return node

    def render(self) -> str:
        return render_node(self.root)

    def __str__(self) -> str:
        return self.render()


def and_gate(*children: AccessNode) -> Gate:
    return Gate(len(children), tuple(children))


def or_gate(*children: AccessNode) -> Gate:
    return Gate(1, tuple(children))


def threshold_gate(threshold: int, *children: AccessNode) -> Gate:
    return Gate(threshold, tuple(children))


def render_node(node: AccessNode) -> str:
    if isinstance(node, Leaf):
        return node.attribute

    n = len(node.children)
    if n == 2 and node.threshold == 2:
        return " and ".join(_operand(child) for child in node.children)
    if n == 2 and node.threshold == 1:
        return " or ".join(_operand(child) for child in node.children)

    inner = ", ".join(render_node(child) for child in node.children)
    return f"{node.threshold} of ({inner})"


def _operand(node: AccessNode) -> str:
    if isinstance(node, Leaf):
        return node.attribute
    return f"({render_node(node)})"


def _walk_leaves(node: AccessNode, position: Position) -> Iterator[tuple[Position, str]]:
    if isinstance(node, Leaf):
        yield position, node.attribute
        return
    for index, child in enumerate(node.children, start=1):
        yield from _walk_leaves(child, position + (index,))
