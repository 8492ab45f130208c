from __future__ import annotations

import math
import random

from loguru import logger

from ..errors import NonInvertible, NotAResidue

# Deterministic Miller-Rabin witnesses: correct for every n below this bound.
DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
    157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233,
)


def mod_inv(a: int, p: int) -> int:
    """Inverse of a modulo p, in [1, p)."""
    a %= p
    if a == 0 or math.gcd(a, p) != 1:
        raise NonInvertible(f"{a} has no inverse modulo {p}")
    return pow(a, -1, p)


def mod_sqrt_3mod4(z: int, p: int) -> int:
    """Square root for p = 3 mod 4: y = z^((p+1)/4) mod p."""
    assert p % 4 == 3, f"p = {p} is not 3 mod 4"
    z %= p
    y = pow(z, (p + 1) // 4, p)
    if y * y % p != z:
        raise NotAResidue(f"{z} is not a square modulo {p}")
    return y


def is_quadratic_residue(z: int, p: int) -> bool:
    z %= p
    return z == 0 or pow(z, (p - 1) // 2, p) == 1


def mod_sqrt(z: int, p: int) -> int:
    """
    Square root modulo an odd prime p (Tonelli-Shanks), with the
    z^((p+1)/4) shortcut when p = 3 mod 4.
    """
    z %= p
    if z == 0:
        return 0
    if p % 4 == 3:
        return mod_sqrt_3mod4(z, p)
    if not is_quadratic_residue(z, p):
        raise NotAResidue(f"{z} is not a square modulo {p}")

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    nonresidue = 2
    while is_quadratic_residue(nonresidue, p):
        nonresidue += 1

    m = s
    c = pow(nonresidue, q, p)
    t = pow(z, q, p)
    r = pow(z, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def cube_root_mod(z: int, p: int) -> int:
    """The unique cube root of z modulo p when p = 2 mod 3."""
    assert p % 3 == 2, f"cubing is not a bijection modulo {p}"
    return pow(z % p, (2 * p - 1) // 3, p)


def smallest_nonresidue(p: int) -> int:
    d = 2
    while is_quadratic_residue(d, p):
        d += 1
    return d


def is_prime(n: int, rounds: int = 32, rng: random.Random | None = None) -> bool:
    """
    Miller-Rabin. Deterministic below DETERMINISTIC_BOUND, otherwise `rounds`
    witnesses drawn from `rng` (seeded from n when absent, so the answer is
    reproducible).
    """
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n == sp:
            return True
        if n % sp == 0:
            return False

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if n < DETERMINISTIC_BOUND:
        witnesses = DETERMINISTIC_WITNESSES
    else:
        rng = rng or random.Random(n)
        witnesses = tuple(rng.randrange(2, n - 1) for _ in range(max(1, rounds)))

    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def gen_prime(bits: int, rng: random.Random) -> int:
    """A prime with exactly `bits` bits (top bit set), deterministic in rng."""
    assert bits >= 2, "a prime needs at least 2 bits"
    if bits == 2:
        return rng.choice((2, 3))
    tries = 0
    while True:
        tries += 1
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(candidate, rng=rng):
            logger.debug("gen_prime({}) found after {} candidates", bits, tries)
            return candidate


def small_factors(n: int) -> list[int]:
    """Distinct prime factors of a small integer, by trial division."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors
