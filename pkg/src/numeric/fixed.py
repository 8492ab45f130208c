from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

FRACTION_BITS = 62
ONE_BITS = 1 << FRACTION_BITS
FRACTION_MASK = ONE_BITS - 1


@dataclass(frozen=True, slots=True, order=True)
class Fraction64:
    """
    Unsigned Q0.62 fixed-point value in [0, 1]. `bits == ONE_BITS` is the
    exact-one value; everything else is a 62-bit fraction. Division and
    subtraction truncate toward zero so results are bit-exact everywhere.
    """
    bits: int

    def __post_init__(self):
        assert 0 <= self.bits <= ONE_BITS, f"Fraction64 out of range: {self.bits}"

    @classmethod
    def zero(cls) -> "Fraction64":
        return cls(0)

    @classmethod
    def one(cls) -> "Fraction64":
        return cls(ONE_BITS)

    @classmethod
    def from_ratio(cls, num: int, den: int) -> "Fraction64":
        assert den > 0 and 0 <= num <= den
        return cls((num << FRACTION_BITS) // den)

    @classmethod
    def from_float(cls, value: float) -> "Fraction64":
        f = Fraction(value)
        return cls.from_ratio(f.numerator, f.denominator)

    @property
    def is_one(self) -> bool:
        return self.bits == ONE_BITS

    def to_fraction(self) -> Fraction:
        return Fraction(self.bits, ONE_BITS)

    def __float__(self) -> float:
        return self.bits / ONE_BITS

    def __sub__(self, other: "Fraction64") -> "Fraction64":
        return Fraction64(max(0, self.bits - other.bits))

    def __truediv__(self, other: "Fraction64") -> "Fraction64":
        assert other.bits > 0, "division by zero fraction"
        return Fraction64(min(ONE_BITS, (self.bits << FRACTION_BITS) // other.bits))

    def scale_floor(self, n: int) -> int:
        """floor(n * value)."""
        return (n * self.bits) >> FRACTION_BITS

    def __repr__(self) -> str:
        return f"Fraction64({float(self):.18f})"


HALF = Fraction64(ONE_BITS >> 1)


def frac_xor(a: Fraction64, b: Fraction64) -> Fraction64:
    """Bitwise XOR of the 62 fractional bits of two values in [0, 1)."""
    assert not a.is_one and not b.is_one, "XOR is defined on [0, 1)"
    return Fraction64((a.bits ^ b.bits) & FRACTION_MASK)
