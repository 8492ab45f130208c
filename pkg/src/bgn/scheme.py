from __future__ import annotations

import random
from functools import lru_cache

from loguru import logger

from ..ec.curve import point_add, scalar_mul
from ..ec.pairing import modified_weil
from ..errors import ExtensionDisabled, LevelMismatch, MessageOutOfRange, TableTooLarge
from ..numeric.fp2 import Fp2
from .ciphertext import LEVEL_PAIRING, LEVEL_POINT, Ciphertext
from .config import BgnConfig
from .dlog import DEFAULT_TABLE_CAP, CurveGroup, DlogTable, PairingGroup, bsgs, build_dlog_table
from .keys import BgnPrivateKey, BgnPublicKey


@lru_cache(maxsize=32)
def pairing_constants(pk: BgnPublicKey):
    """g1 = e(g, g) and h1 = e(g, h)."""
    g1 = modified_weil(pk.g, pk.g, pk.n, pk.curve)
    h1 = modified_weil(pk.g, pk.h, pk.n, pk.curve)
    return g1, h1


def _nonce(pk: BgnPublicKey, rng: random.Random) -> int:
    return rng.randrange(pk.n)


def _require_level(level: int, *cts: Ciphertext) -> None:
    for ct in cts:
        if ct.level != level:
            raise LevelMismatch(f"expected a level-{level} ciphertext, got level {ct.level}")


def encrypt(pk: BgnPublicKey, m: int, rng: random.Random, r: int | None = None) -> Ciphertext:
    """C = m*g + r*h, r uniform in [0, n-1] unless forced."""
    if not 0 <= m <= pk.T:
        raise MessageOutOfRange(f"message {m} outside [0, {pk.T}]")
    r = _nonce(pk, rng) if r is None else r
    C = point_add(scalar_mul(m, pk.g, pk.curve), scalar_mul(r, pk.h, pk.curve), pk.curve)
    return Ciphertext(LEVEL_POINT, C)


def build_level1_table(pk: BgnPublicKey, sk: BgnPrivateKey, cap: int = DEFAULT_TABLE_CAP) -> DlogTable:
    base = scalar_mul(sk.q1, pk.g, pk.curve)
    return build_dlog_table(base, pk.T, CurveGroup(pk.curve), cap)


def build_level2_table(pk: BgnPublicKey, sk: BgnPrivateKey, cap: int = DEFAULT_TABLE_CAP) -> DlogTable | None:
    """Powers of g1^q1 up to T2, or None when T2 is beyond the cap (decryption then uses BSGS)."""
    g1, _ = pairing_constants(pk)
    try:
        return build_dlog_table(g1 ** sk.q1, pk.T2, PairingGroup(Fp2.of(pk.p)), cap)
    except TableTooLarge:
        logger.info("level-2 bound {} exceeds the table cap, falling back to BSGS", pk.T2)
        return None


def decrypt(pk: BgnPublicKey, sk: BgnPrivateKey, C: Ciphertext, table: DlogTable | None = None) -> int:
    """m = log_{q1*g}(q1*C)."""
    _require_level(LEVEL_POINT, C)
    target = scalar_mul(sk.q1, C.payload, pk.curve)
    if table is not None:
        return table.log(target)
    base = scalar_mul(sk.q1, pk.g, pk.curve)
    return bsgs(base, target, pk.T, CurveGroup(pk.curve))


def hom_add(pk: BgnPublicKey, C1: Ciphertext, C2: Ciphertext, rng: random.Random) -> Ciphertext:
    """C = C1 + C2 + r*h."""
    _require_level(LEVEL_POINT, C1, C2)
    curve = pk.curve
    C = point_add(point_add(C1.payload, C2.payload, curve), scalar_mul(_nonce(pk, rng), pk.h, curve), curve)
    return Ciphertext(LEVEL_POINT, C)


def hom_scale(pk: BgnPublicKey, C: Ciphertext, k: int, rng: random.Random) -> Ciphertext:
    """k-fold homomorphic sum of C (multiplication by a clear constant), re-randomised."""
    _require_level(LEVEL_POINT, C)
    assert k >= 0
    curve = pk.curve
    scaled = point_add(scalar_mul(k, C.payload, curve), scalar_mul(_nonce(pk, rng), pk.h, curve), curve)
    return Ciphertext(LEVEL_POINT, scaled)


def hom_mul(pk: BgnPublicKey, C1: Ciphertext, C2: Ciphertext, rng: random.Random) -> Ciphertext:
    """C_m = e(C1, C2) * h1^r, a level-2 ciphertext of m1*m2."""
    _require_level(LEVEL_POINT, C1, C2)
    _, h1 = pairing_constants(pk)
    paired = modified_weil(C1.payload, C2.payload, pk.n, pk.curve)
    return Ciphertext(LEVEL_PAIRING, paired * h1 ** _nonce(pk, rng))


def hom_add_level2(
    pk: BgnPublicKey,
    C1: Ciphertext,
    C2: Ciphertext,
    rng: random.Random,
    config: BgnConfig | None = None,
) -> Ciphertext:
    """Sum of two level-2 ciphertexts: C1 * C2 * h1^r. Off unless enabled in the config."""
    config = config or BgnConfig()
    if not config.level2_addition:
        raise ExtensionDisabled("level-2 addition is disabled (BgnConfig.level2_addition)")
    _require_level(LEVEL_PAIRING, C1, C2)
    _, h1 = pairing_constants(pk)
    return Ciphertext(LEVEL_PAIRING, C1.payload * C2.payload * h1 ** _nonce(pk, rng))


def decrypt_product(
    pk: BgnPublicKey,
    sk: BgnPrivateKey,
    C: Ciphertext,
    table2: DlogTable | None = None,
) -> int:
    """m1*m2 = log_{g1^q1}(C^q1)."""
    _require_level(LEVEL_PAIRING, C)
    target = C.payload ** sk.q1
    if table2 is not None:
        return table2.log(target)
    g1, _ = pairing_constants(pk)
    return bsgs(g1 ** sk.q1, target, pk.T2, PairingGroup(Fp2.of(pk.p)))
