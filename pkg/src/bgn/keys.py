from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from loguru import logger

from ..ec.curve import (
    CurveParams,
    CurvePoint,
    point_from_hex,
    point_order_is,
    point_to_hex,
    random_point,
    scalar_mul,
)
from ..errors import GenerationFailure, InvalidCompressedPoint, MalformedKeyFile
from ..numeric.modular import gen_prime, is_prime, small_factors
from .config import BgnConfig


@dataclass(frozen=True, slots=True)
class BgnPublicKey:
    """
    (n, G, g, h) plus the field prime and cofactor: p = l*n - 1,
    G the order-n subgroup of y^2 = x^3 + 1 over F_p, g of order n,
    h = q2*u of order q1. T and T2 bound level-1 and level-2 plaintexts.
    """
    n: int
    p: int
    l: int
    g: CurvePoint
    h: CurvePoint
    curve: CurveParams
    T: int
    T2: int


@dataclass(frozen=True, slots=True)
class BgnPrivateKey:
    q1: int


def find_field_prime(n: int, config: BgnConfig) -> tuple[int, int] | None:
    """Smallest l >= 1 with p = l*n - 1 prime and p = 2 mod 3 (and 3 mod 4 if required)."""
    for l in range(1, config.max_cofactor + 1):
        p = l * n - 1
        if p % 3 != 2 or (config.require_p_3_mod_4 and p % 4 != 3):
            continue
        if is_prime(p):
            return l, p
    return None


def _sample_order(
    curve: CurveParams,
    cofactor: int,
    order: int,
    factors: list[int],
    rng: random.Random,
    config: BgnConfig,
) -> CurvePoint | None:
    """cofactor * X for a random X, accepted once it has exactly `order`."""
    for _ in range(config.max_point_samples):
        candidate = scalar_mul(cofactor, random_point(curve, rng), curve)
        if point_order_is(candidate, order, factors, curve):
            return candidate
    return None


def keygen(
    tau: int,
    rng: random.Random,
    config: BgnConfig | None = None,
    primes: tuple[int, int] | None = None,
) -> tuple[BgnPublicKey, BgnPrivateKey]:
    """
    q1, q2 <- tau-bit primes; n = q1*q2; scan l for p = l*n - 1; g = l*X with
    X of full order p + 1; u a second order-n point and h = q2*u.
    `primes` forces (q1, q2) for toy instances.
    """
    assert tau >= 2, "tau must be at least 2"
    config = config or BgnConfig()

    for attempt in range(1, config.keygen_retries + 1):
        if primes is not None:
            q1, q2 = primes
        else:
            q1, q2 = gen_prime(tau, rng), gen_prime(tau, rng)
        if q1 == q2:
            logger.debug("q1 = q2 = {}, retrying", q1)
            continue
        n = q1 * q2
        found = find_field_prime(n, config)
        if found is None:
            logger.debug("no field prime for n = {} within l <= {}", n, config.max_cofactor)
            continue
        l, p = found
        curve = CurveParams.supersingular(p)

        full_factors = sorted(set(small_factors(l)) | {q1, q2})
        X = _sample_order(curve, 1, p + 1, full_factors, rng, config)
        u = _sample_order(curve, l, n, [q1, q2], rng, config)
        if X is None or u is None:
            logger.debug("generator search failed on attempt {}", attempt)
            continue
        g = scalar_mul(l, X, curve)
        h = scalar_mul(q2, u, curve)

        T = min(config.message_bound, q2 - 1)
        if T < config.message_bound:
            logger.warning("message bound clamped to q2 - 1 = {}", T)
        T2 = min(config.product_bound if config.product_bound is not None else T * T, q2 - 1)

        logger.info("generated key: |p| = {} bits, n = {} bits, l = {}", p.bit_length(), n.bit_length(), l)
        return (
            BgnPublicKey(n=n, p=p, l=l, g=g, h=h, curve=curve, T=T, T2=T2),
            BgnPrivateKey(q1=q1),
        )

    raise GenerationFailure(f"key generation failed after {config.keygen_retries} attempts (tau = {tau})")


def public_key_to_json(pk: BgnPublicKey) -> str:
    return json.dumps(
        {
            "n": str(pk.n),
            "p": str(pk.p),
            "l": str(pk.l),
            "g": point_to_hex(pk.g),
            "h": point_to_hex(pk.h),
            "curve": {"a": str(pk.curve.a), "b": str(pk.curve.b)},
            "T": str(pk.T),
            "T2": str(pk.T2),
        },
        indent=2,
    )


def public_key_from_json(text: str, config: BgnConfig | None = None) -> BgnPublicKey:
    """Files without T/T2 get the configured bounds, capped below n."""
    config = config or BgnConfig()
    try:
        data = json.loads(text)
        p = int(data["p"])
        curve = CurveParams(p, int(data["curve"]["a"]), int(data["curve"]["b"]))
        n, l = int(data["n"]), int(data["l"])
        if "T" in data:
            T = int(data["T"])
        else:
            T = min(config.message_bound, n - 1)
            logger.debug("public key has no T, using {}", T)
        if "T2" not in data:
            bound = config.product_bound if config.product_bound is not None else T * T
            data["T2"] = min(bound, n - 1)
        return BgnPublicKey(
            n=n,
            p=p,
            l=l,
            g=point_from_hex(data["g"], curve),
            h=point_from_hex(data["h"], curve),
            curve=curve,
            T=T,
            T2=int(data.get("T2", T)),
        )
    except (KeyError, TypeError, ValueError, InvalidCompressedPoint) as e:
        raise MalformedKeyFile(f"invalid public key: {e}") from e


def private_key_to_json(sk: BgnPrivateKey) -> str:
    return json.dumps({"q1": str(sk.q1)}, indent=2)


def private_key_from_json(text: str) -> BgnPrivateKey:
    try:
        return BgnPrivateKey(q1=int(json.loads(text)["q1"]))
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedKeyFile(f"invalid private key: {e}") from e


def save_keys(pk: BgnPublicKey, sk: BgnPrivateKey, pub_path: Path, priv_path: Path) -> None:
    Path(pub_path).write_text(public_key_to_json(pk), encoding="utf-8")
    Path(priv_path).write_text(private_key_to_json(sk), encoding="utf-8")


def load_public_key(path: Path) -> BgnPublicKey:
    return public_key_from_json(Path(path).read_text(encoding="utf-8"))


def load_private_key(path: Path) -> BgnPrivateKey:
    return private_key_from_json(Path(path).read_text(encoding="utf-8"))
