from aben.pairing.curve import CurvePoint, point_add, scalar_mul
from aben.pairing.field import Fp, Fp2
from aben.pairing.hashing import hash_to_group
from aben.pairing.params import (
    GroupParams,
    SecurityLevel,
    generate_params,
    parse_params_text,
    render_params_text,
    toy_params,
)
from aben.pairing.tate import (
    GtElement,
    gt_inv,
    gt_mul,
    gt_pow,
    pairing,
    pairing_product,
)

__all__ = [
    "CurvePoint",
    "Fp",
    "Fp2",
    "GroupParams",
    "GtElement",
    "SecurityLevel",
    "generate_params",
    "gt_inv",
    "gt_mul",
    "gt_pow",
    "hash_to_group",
    "pairing",
    "pairing_product",
    "parse_params_text",
    "point_add",
    "render_params_text",
    "scalar_mul",
    "toy_params",
]
