from .config import BgnConfig, SecurityLevel, SECURITY_LEVELS
from .keys import BgnPublicKey, BgnPrivateKey, keygen
from .ciphertext import Ciphertext, to_wire, from_wire
from .dlog import DlogTable, build_dlog_table, bsgs, CurveGroup, PairingGroup
from .scheme import (
    encrypt,
    decrypt,
    hom_add,
    hom_mul,
    hom_scale,
    hom_add_level2,
    decrypt_product,
    build_level1_table,
    build_level2_table,
    pairing_constants,
)

__all__ = [
    "BgnConfig", "SecurityLevel", "SECURITY_LEVELS",
    "BgnPublicKey", "BgnPrivateKey", "keygen",
    "Ciphertext", "to_wire", "from_wire",
    "DlogTable", "build_dlog_table", "bsgs", "CurveGroup", "PairingGroup",
    "encrypt", "decrypt", "hom_add", "hom_mul", "hom_scale", "hom_add_level2",
    "decrypt_product", "build_level1_table", "build_level2_table", "pairing_constants",
]
