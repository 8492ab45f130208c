from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import NonInvertible
from .modular import mod_sqrt, smallest_nonresidue


@dataclass(frozen=True, slots=True)
class Fp2:
    """
    The quadratic extension F_p[i] / (i^2 = d), d the smallest positive
    quadratic non-residue modulo p.
    """
    p: int
    d: int

    @classmethod
    def of(cls, p: int) -> "Fp2":
        return _field(p)

    def element(self, a0: int, a1: int = 0) -> "Fp2Element":
        return Fp2Element(a0 % self.p, a1 % self.p, self)

    def zero(self) -> "Fp2Element":
        return Fp2Element(0, 0, self)

    def one(self) -> "Fp2Element":
        return Fp2Element(1, 0, self)

    def cube_root_of_unity(self) -> "Fp2Element":
        """
        Lexicographically smallest primitive cube root of unity,
        zeta = (-1 +- sqrt(-3)) / 2. For p = 2 mod 3, -3 is a non-residue in
        F_p so sqrt(-3) = c*i with c^2 = -3/d.
        """
        p = self.p
        half = pow(2, -1, p)
        if pow(-3 % p, (p - 1) // 2, p) == 1:
            root = mod_sqrt(-3, p)
            candidates = [self.element((-1 + root) * half), self.element((-1 - root) * half)]
        else:
            c = mod_sqrt(-3 * pow(self.d, -1, p), p)
            candidates = [self.element(-half, c * half), self.element(-half, -c * half)]
        return min(candidates, key=lambda z: (z.a0, z.a1))


@lru_cache(maxsize=64)
def _field(p: int) -> Fp2:
    return Fp2(p, smallest_nonresidue(p))


@dataclass(frozen=True, slots=True)
class Fp2Element:
    """a0 + a1*i, both components reduced modulo p."""
    a0: int
    a1: int
    field: Fp2

    def _lift(self, other) -> "Fp2Element":
        if isinstance(other, Fp2Element):
            return other
        return self.field.element(other)

    def __add__(self, other) -> "Fp2Element":
        o = self._lift(other)
        p = self.field.p
        return Fp2Element((self.a0 + o.a0) % p, (self.a1 + o.a1) % p, self.field)

    __radd__ = __add__

    def __sub__(self, other) -> "Fp2Element":
        o = self._lift(other)
        p = self.field.p
        return Fp2Element((self.a0 - o.a0) % p, (self.a1 - o.a1) % p, self.field)

    def __rsub__(self, other) -> "Fp2Element":
        return self._lift(other) - self

    def __neg__(self) -> "Fp2Element":
        p = self.field.p
        return Fp2Element(-self.a0 % p, -self.a1 % p, self.field)

    def __mul__(self, other) -> "Fp2Element":
        o = self._lift(other)
        p, d = self.field.p, self.field.d
        return Fp2Element(
            (self.a0 * o.a0 + d * self.a1 * o.a1) % p,
            (self.a0 * o.a1 + self.a1 * o.a0) % p,
            self.field,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Fp2Element":
        # (a0 + a1 i)^-1 = (a0 - a1 i) / (a0^2 - d a1^2)
        p, d = self.field.p, self.field.d
        norm = (self.a0 * self.a0 - d * self.a1 * self.a1) % p
        if norm == 0:
            raise NonInvertible("zero has no inverse in F_p^2")
        inv = pow(norm, -1, p)
        return Fp2Element(self.a0 * inv % p, -self.a1 * inv % p, self.field)

    def __truediv__(self, other) -> "Fp2Element":
        return self * self._lift(other).inverse()

    def __pow__(self, k: int) -> "Fp2Element":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0

    def is_one(self) -> bool:
        return self.a0 == 1 and self.a1 == 0

    def in_base_field(self) -> bool:
        return self.a1 == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.a1 == 0 and self.a0 == other % self.field.p
        if not isinstance(other, Fp2Element):
            return NotImplemented
        return (self.a0, self.a1, self.field.p) == (other.a0, other.a1, other.field.p)

    def __hash__(self) -> int:
        return hash((self.a0, self.a1, self.field.p))

    def __repr__(self) -> str:
        return f"Fp2Element({self.a0} + {self.a1}i mod {self.field.p})"


def fp2_add(x: Fp2Element, y: Fp2Element) -> Fp2Element:
    return x + y


def fp2_mul(x: Fp2Element, y: Fp2Element) -> Fp2Element:
    return x * y


def fp2_inv(x: Fp2Element) -> Fp2Element:
    return x.inverse()


def fp2_pow(x: Fp2Element, k: int) -> Fp2Element:
    return x ** k
