from aben.schemes.cpabe import (
    CpHeader,
    CpMasterKey,
    CpPrivateKey,
    CpPublicParams,
    cp_decrypt,
    cp_encrypt,
    cp_keygen,
    cp_setup,
)
from aben.schemes.kpabe import (
    KpHeader,
    KpMasterKey,
    KpPrivateKey,
    KpPublicParams,
    kp_decrypt,
    kp_encrypt,
    kp_keygen,
    kp_setup,
)

__all__ = [
    "CpHeader",
    "CpMasterKey",
    "CpPrivateKey",
    "CpPublicParams",
    "KpHeader",
    "KpMasterKey",
    "KpPrivateKey",
    "KpPublicParams",
    "cp_decrypt",
    "cp_encrypt",
    "cp_keygen",
    "cp_setup",
    "kp_decrypt",
    "kp_encrypt",
    "kp_keygen",
    "kp_setup",
]
