from itertools import chain, combinations

import pytest

from aben.errors import InvalidAttribute, NotSatisfied
from aben.policy import (
    AccessNode,
    AttributeSet,
    Gate,
    Leaf,
    PrunedGate,
    PrunedLeaf,
    PrunedNode,
    parse_policy,
    pruned_leaves,
    satisfies,
    select_satisfying_subtree,
)
from aben.utils.rng import ChaChaRandom

from treegen import random_policy

ALPHABET = ("a", "b", "c", "d", "e", "f")


def subsets(items):
    return [
        frozenset(combo)
        for combo in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))
    ]


def truth_table(node: AccessNode, attrs) -> bool:
    if isinstance(node, Leaf):
        return node.attribute in attrs
    return any(
        all(truth_table(child, attrs) for child in chosen)
        for chosen in combinations(node.children, node.threshold)
    )


def cheapest(node: AccessNode, attrs):
    """Fewest leaves of any satisfying selection, by enumerating child combinations."""
    if isinstance(node, Leaf):
        return 1 if node.attribute in attrs else None
    best = None
    for chosen in combinations(node.children, node.threshold):
        costs = [cheapest(child, attrs) for child in chosen]
        if None in costs:
            continue
        if best is None or sum(costs) < best:
            best = sum(costs)
    return best


def check_pruned(tree, node: PrunedNode, attrs) -> None:
    original = tree.node_at(node.position)
    if isinstance(node, PrunedLeaf):
        assert original == Leaf(node.attribute)
        assert node.attribute in attrs
        return
    assert isinstance(original, Gate)
    assert len(node.children) == original.threshold
    assert list(node.indices) == sorted(node.indices)
    for index, child in node.children:
        assert child.position == node.position + (index,)
        check_pruned(tree, child, attrs)


@pytest.mark.parametrize(
    "attrs, expected",
    [
        ({"c"}, True),
        ({"a"}, False),
        ({"a", "b"}, True),
        ({"b", "c"}, True),
        (set(), False),
        ({"A", "B", "C"}, False),
    ],
)
def test_satisfies_examples(attrs, expected):
    assert satisfies(parse_policy("(a and b) or c"), attrs) is expected


def test_satisfies_matches_truth_table():
    rng = ChaChaRandom("satisfy-oracle")
    all_subsets = subsets(ALPHABET)
    for _ in range(200):
        tree = random_policy(rng, ALPHABET, max_leaves=6)
        for attrs in all_subsets:
            assert satisfies(tree, attrs) == truth_table(tree.root, attrs), (tree.render(), attrs)


def test_satisfies_is_monotone():
    rng = ChaChaRandom("satisfy-monotone")
    all_subsets = subsets(ALPHABET[:4])
    for _ in range(50):
        tree = random_policy(rng, ALPHABET[:4], max_leaves=5)
        for small in all_subsets:
            if not satisfies(tree, small):
                continue
            for large in all_subsets:
                if small <= large:
                    assert satisfies(tree, large)


def test_selection_prefers_fewer_leaves():
    tree = parse_policy("(a and b) or c")
    assert select_satisfying_subtree(tree, {"a", "b", "c"}) == PrunedGate(
        position=(),
        children=((2, PrunedLeaf((2,), "c")),),
        leaf_count=1,
    )


def test_selection_falls_back_to_the_and_branch():
    tree = parse_policy("(a and b) or c")
    pruned = select_satisfying_subtree(tree, {"a", "b"})
    assert [leaf.attribute for leaf in pruned_leaves(pruned)] == ["a", "b"]
    assert pruned.indices == (1,)
    assert pruned.leaf_count == 2


def test_selection_ties_go_to_the_lower_index():
    pruned = select_satisfying_subtree(parse_policy("2 of (a, b, c)"), {"a", "b", "c"})
    assert pruned.indices == (1, 2)


def test_selection_keeps_child_order():
    tree = parse_policy("2 of (a and b, c, d)")
    pruned = select_satisfying_subtree(tree, {"a", "b", "d"})
    assert pruned.indices == (1, 3)
    assert [leaf.position for leaf in pruned_leaves(pruned)] == [(1, 1), (1, 2), (3,)]


def test_unsatisfied_selection_raises():
    with pytest.raises(NotSatisfied):
        select_satisfying_subtree(parse_policy("a and b"), {"a"})


def test_selection_against_exhaustive_enumeration():
    rng = ChaChaRandom("selection-oracle")
    all_subsets = subsets(ALPHABET)
    for _ in range(100):
        tree = random_policy(rng, ALPHABET, max_leaves=6)
        for attrs in all_subsets:
            if not satisfies(tree, attrs):
                with pytest.raises(NotSatisfied):
                    select_satisfying_subtree(tree, attrs)
                continue

            pruned = select_satisfying_subtree(tree, attrs)
            check_pruned(tree, pruned, attrs)
            assert pruned.leaf_count == len(pruned_leaves(pruned))
            assert pruned.leaf_count == cheapest(tree.root, attrs)


def test_attribute_set_validates_names():
    assert AttributeSet(["a", "b", "a"]) == {"a", "b"}
    with pytest.raises(InvalidAttribute):
        AttributeSet(["ok", "not ok"])
