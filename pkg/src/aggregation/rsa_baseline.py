from __future__ import annotations

import random
import time
from functools import lru_cache

from loguru import logger

from ..numeric.modular import gen_prime
from ..numeric.rng import substream

RSA_MODULUS_BITS = (472, 945, 1416, 1891)


@lru_cache(maxsize=8)
def rsa_test_modulus(bits: int, seed: int = 0) -> int:
    """A fixed product of two primes with exactly `bits` bits, reproducible from `seed`."""
    assert bits >= 16
    rng = substream(seed, f"rsa-{bits}")
    while True:
        a = gen_prime(bits - bits // 2, rng)
        b = gen_prime(bits // 2, rng)
        N = a * b
        if a != b and N.bit_length() == bits:
            logger.debug("RSA test modulus of {} bits ready", bits)
            return N


def rsa_exponent(bits: int, rng: random.Random) -> int:
    """Odd exponent of full modulus size; cost stands in for a private-key operation."""
    return rng.getrandbits(bits - 1) | (1 << (bits - 2)) | 1


def rsa_baseline_encrypt(bits: int, m: int, rng: random.Random, seed: int = 0) -> tuple[int, float]:
    """m^e mod N for a full-size exponent e drawn from `rng`; returns (ciphertext, seconds)."""
    N = rsa_test_modulus(bits, seed)
    assert 0 <= m < N
    e = rsa_exponent(bits, rng)
    start = time.perf_counter()
    c = pow(m, e, N)
    return c, time.perf_counter() - start


def rsa_aggregator_round(bits: int, children: list[int], rng: random.Random, seed: int = 0) -> tuple[int, float]:
    """
    Hop-by-hop aggregation: decrypt every child ciphertext, add the
    plaintexts and re-encrypt the sum. One exponentiation per child plus one.
    """
    N = rsa_test_modulus(bits, seed)
    elapsed = 0.0
    total = 0
    for c in children:
        plain, t = rsa_baseline_encrypt(bits, c % N, rng, seed)
        total = (total + plain) % N
        elapsed += t
    out, t = rsa_baseline_encrypt(bits, total, rng, seed)
    return out, elapsed + t
