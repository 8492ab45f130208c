from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..errors import (
    CannotCompressInfinity,
    InvalidCompressedPoint,
    NotAResidue,
    NotOnCurve,
)
from ..numeric.modular import (
    cube_root_mod,
    is_quadratic_residue,
    mod_inv,
    mod_sqrt,
    mod_sqrt_3mod4,
)


@dataclass(frozen=True, slots=True)
class CurveParams:
    """y^2 = x^3 + a x + b over F_p."""
    p: int
    a: int
    b: int

    def __post_init__(self):
        if (4 * self.a ** 3 + 27 * self.b ** 2) % self.p == 0:
            raise NotOnCurve(f"singular curve: a={self.a}, b={self.b} mod {self.p}")

    @classmethod
    def supersingular(cls, p: int) -> "CurveParams":
        """The cryptosystem curve y^2 = x^3 + 1."""
        return cls(p, 0, 1)

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p

    def contains(self, point: "CurvePoint") -> bool:
        if point.is_infinity:
            return True
        return (point.y * point.y - self.rhs(point.x)) % self.p == 0

    def point(self, x: int, y: int) -> "CurvePoint":
        """Build a finite point, checking it lies on the curve."""
        pt = CurvePoint(x % self.p, y % self.p)
        if not self.contains(pt):
            raise NotOnCurve(f"({x}, {y}) is not on {self}")
        return pt


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """Affine point; x = y = None is the point at infinity O."""
    x: Optional[int] = None
    y: Optional[int] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True, slots=True)
class CompressedPoint:
    x: int
    parity: int


def point_neg(P: CurvePoint, curve: CurveParams) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y % curve.p)


def point_add(P: CurvePoint, Q: CurvePoint, curve: CurveParams) -> CurvePoint:
    """Chord-and-tangent group law in affine coordinates."""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    p = curve.p
    if P.x == Q.x and (P.y + Q.y) % p == 0:
        return INFINITY
    if P.x == Q.x:
        lam = (3 * P.x * P.x + curve.a) * mod_inv(2 * P.y, p) % p
    else:
        lam = (Q.y - P.y) * mod_inv(Q.x - P.x, p) % p
    x3 = (lam * lam - P.x - Q.x) % p
    y3 = (lam * (P.x - x3) - P.y) % p
    return CurvePoint(x3, y3)


def scalar_mul(k: int, P: CurvePoint, curve: CurveParams) -> CurvePoint:
    """k * P by double-and-add; negative k uses -P."""
    if k < 0:
        return scalar_mul(-k, point_neg(P, curve), curve)
    result, addend = INFINITY, P
    while k:
        if k & 1:
            result = point_add(result, addend, curve)
        addend = point_add(addend, addend, curve)
        k >>= 1
    return result


def random_point(curve: CurveParams, rng: random.Random) -> CurvePoint:
    """
    Uniform finite point. On y^2 = x^3 + b with p = 2 mod 3 every y has a
    unique x, so sample y and take a cube root; otherwise sample x until
    the right-hand side is a square.
    """
    p = curve.p
    if curve.a == 0 and p % 3 == 2:
        y = rng.randrange(p)
        x = cube_root_mod(y * y - curve.b, p)
        return CurvePoint(x, y)
    while True:
        x = rng.randrange(p)
        z = curve.rhs(x)
        if is_quadratic_residue(z, p):
            y = mod_sqrt(z, p)
            return CurvePoint(x, y if rng.getrandbits(1) else -y % p)


def compress_point(P: CurvePoint) -> CompressedPoint:
    """(x, y) -> (x, y mod 2)."""
    if P.is_infinity:
        raise CannotCompressInfinity("the point at infinity has no affine form")
    return CompressedPoint(P.x, P.y & 1)


def decompress_point(c: CompressedPoint, curve: CurveParams) -> CurvePoint:
    """(x, i) -> (x, y) with y = z^((p+1)/4) or p - y, matching parity i."""
    p = curve.p
    if not 0 <= c.x < p or c.parity not in (0, 1):
        raise InvalidCompressedPoint(f"compressed point out of range: {c}")
    z = curve.rhs(c.x)
    try:
        y = mod_sqrt_3mod4(z, p)
    except NotAResidue as e:
        raise InvalidCompressedPoint(f"x = {c.x} is not the abscissa of a curve point") from e
    if y & 1 != c.parity:
        y = (p - y) % p
    return CurvePoint(c.x, y)


def compressed_size_bits(curve: CurveParams) -> int:
    """Wire size of a compressed level-1 ciphertext: |p| bits of x plus one parity bit."""
    return curve.p.bit_length() + 1


def point_to_hex(P: CurvePoint) -> str:
    """Compressed text form: lowercase hex of x, a colon, the parity bit; "inf" for O."""
    if P.is_infinity:
        return "inf"
    c = compress_point(P)
    return f"{c.x:x}:{c.parity}"


def point_from_hex(text: str, curve: CurveParams) -> CurvePoint:
    text = text.strip()
    if text == "inf":
        return INFINITY
    try:
        x_hex, parity = text.split(":")
        c = CompressedPoint(int(x_hex, 16), int(parity))
    except ValueError as e:
        raise InvalidCompressedPoint(f"bad point encoding {text!r}") from e
    return decompress_point(c, curve)


def point_order_is(P: CurvePoint, order: int, prime_factors: list[int], curve: CurveParams) -> bool:
    """True iff P has exactly `order`, given the distinct prime factors of `order`."""
    if not scalar_mul(order, P, curve).is_infinity:
        return False
    return all(not scalar_mul(order // q, P, curve).is_infinity for q in prime_factors)
