from __future__ import annotations

from dataclasses import dataclass

from ..ec.curve import CurvePoint, point_from_hex, point_to_hex
from ..errors import InvalidCompressedPoint, MalformedCiphertext
from ..numeric.fp2 import Fp2, Fp2Element
from .keys import BgnPublicKey

LEVEL_POINT = 1
LEVEL_PAIRING = 2


@dataclass(frozen=True, slots=True)
class Ciphertext:
    """
    Level 1: a point m*g + r*h of the order-n subgroup.
    Level 2: a pairing value e(C1, C2) * h1^r in F_p^2.
    """
    level: int
    payload: CurvePoint | Fp2Element

    def __post_init__(self):
        assert self.level in (LEVEL_POINT, LEVEL_PAIRING), f"bad level {self.level}"


def to_wire(ct: Ciphertext) -> bytes:
    """Level byte, then the compressed point or the two F_p^2 components."""
    if ct.level == LEVEL_POINT:
        body = point_to_hex(ct.payload)
    else:
        body = f"{ct.payload.a0},{ct.payload.a1}"
    return bytes([ct.level]) + body.encode("ascii")


def from_wire(data: bytes, pk: BgnPublicKey) -> Ciphertext:
    if len(data) < 2 or data[0] not in (LEVEL_POINT, LEVEL_PAIRING):
        raise MalformedCiphertext("missing or unknown level byte")
    level, body = data[0], data[1:].decode("ascii", errors="replace").strip()
    try:
        if level == LEVEL_POINT:
            return Ciphertext(LEVEL_POINT, point_from_hex(body, pk.curve))
        a0, a1 = (int(part) for part in body.split(","))
        if not (0 <= a0 < pk.p and 0 <= a1 < pk.p):
            raise ValueError("component out of range")
        return Ciphertext(LEVEL_PAIRING, Fp2.of(pk.p).element(a0, a1))
    except (ValueError, InvalidCompressedPoint) as e:
        raise MalformedCiphertext(f"bad level-{level} payload: {e}") from e
