from aben.policy.parser import parse_policy
from aben.policy.satisfy import (
    PrunedGate,
    PrunedLeaf,
    PrunedNode,
    pruned_leaves,
    satisfies,
    select_satisfying_subtree,
)
from aben.policy.sharing import (
    ShareMap,
    lagrange_coeff,
    leaf_coefficients,
    reconstruct_secret,
    share_secret,
)
from aben.policy.tree import (
    AccessNode,
    AccessTree,
    AttributeSet,
    Gate,
    Leaf,
    Position,
    and_gate,
    or_gate,
    threshold_gate,
)

__all__ = [
    "AccessNode",
    "AccessTree",
    "AttributeSet",
    "Gate",
    "Leaf",
    "Position",
    "PrunedGate",
    "PrunedLeaf",
    "PrunedNode",
    "ShareMap",
    "and_gate",
    "lagrange_coeff",
    "leaf_coefficients",
    "or_gate",
    "parse_policy",
    "pruned_leaves",
    "reconstruct_secret",
    "satisfies",
    "select_satisfying_subtree",
    "share_secret",
    "threshold_gate",
]
