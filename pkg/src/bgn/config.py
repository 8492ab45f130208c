from __future__ import annotations

from dataclasses import dataclass


@dataclass(slots=True)
class BgnConfig:
    """
    System-wide parameters of the cryptosystem. The message bounds are
    clamped below q2 at key generation: q1*g and e(g,g)^q1 have order q2,
    so larger exponents cannot be told apart.
    """
    message_bound: int = 2 ** 16 - 1   # T
    product_bound: int | None = None   # T2; None means T*T
    table_cap: int = 2 ** 24           # max entries of a precomputed dlog table
    keygen_retries: int = 16
    max_cofactor: int = 1 << 20        # scan budget for l in p = l*n - 1
    max_point_samples: int = 256
    require_p_3_mod_4: bool = True     # every key supports point compression
    level2_addition: bool = False


@dataclass(frozen=True, slots=True)
class SecurityLevel:
    level: int
    tau: int        # bits of q1 and q2
    ec_bits: int    # target |p|
    rsa_bits: int   # RSA modulus of matching strength


SECURITY_LEVELS = {
    1: SecurityLevel(1, tau=20, ec_bits=46, rsa_bits=472),
    2: SecurityLevel(2, tau=40, ec_bits=85, rsa_bits=945),
    3: SecurityLevel(3, tau=60, ec_bits=125, rsa_bits=1416),
    4: SecurityLevel(4, tau=80, ec_bits=167, rsa_bits=1891),
}
