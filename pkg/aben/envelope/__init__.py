from aben.envelope.codec import ObjectType, peek_object
from aben.envelope.hybrid import (
    Envelope,
    derive_key,
    deserialize_envelope,
    open_envelope,
    seal,
    serialize_envelope,
)
from aben.envelope.objects import (
    deserialize_cp_header,
    deserialize_cp_key,
    deserialize_cp_master,
    deserialize_cp_public,
    deserialize_kp_header,
    deserialize_kp_key,
    deserialize_kp_master,
    deserialize_kp_public,
    deserialize_params,
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

__all__ = [
    "Envelope",
    "ObjectType",
    "derive_key",
    "deserialize_cp_header",
    "deserialize_cp_key",
    "deserialize_cp_master",
    "deserialize_cp_public",
    "deserialize_envelope",
    "deserialize_kp_header",
    "deserialize_kp_key",
    "deserialize_kp_master",
    "deserialize_kp_public",
    "deserialize_params",
    "open_envelope",
    "peek_object",
    "seal",
    "serialize_cp_header",
    "serialize_cp_key",
    "serialize_cp_master",
    "serialize_cp_public",
    "serialize_envelope",
    "serialize_kp_header",
    "serialize_kp_key",
    "serialize_kp_master",
    "serialize_kp_public",
    "serialize_params",
]
