from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Protocol

from loguru import logger

from ..ec.curve import INFINITY, CurveParams, point_add, point_neg, scalar_mul
from ..errors import DlogNotFound, TableTooLarge
from ..numeric.fp2 import Fp2

DEFAULT_TABLE_CAP = 2 ** 24


class GroupOps(Protocol):
    """The cyclic-group interface discrete logarithms are taken in."""

    def identity(self) -> Any: ...

    def op(self, x: Any, y: Any) -> Any: ...

    def inverse(self, x: Any) -> Any: ...

    def power(self, x: Any, k: int) -> Any: ...


@dataclass(frozen=True, slots=True)
class CurveGroup:
    """Level-1 arena: points of E(F_p), written additively."""
    curve: CurveParams

    def identity(self):
        return INFINITY

    def op(self, x, y):
        return point_add(x, y, self.curve)

    def inverse(self, x):
        return point_neg(x, self.curve)

    def power(self, x, k):
        return scalar_mul(k, x, self.curve)


@dataclass(frozen=True, slots=True)
class PairingGroup:
    """Level-2 arena: pairing values in F_p^2, written multiplicatively."""
    field: Fp2

    def identity(self):
        return self.field.one()

    def op(self, x, y):
        return x * y

    def inverse(self, x):
        return x.inverse()

    def power(self, x, k):
        return x ** k


@dataclass(slots=True)
class DlogTable:
    """Exponent lookup for base^i, i in [0, max]."""
    base: Any
    max: int
    lookup: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.lookup)

    def log(self, element) -> int:
        try:
            return self.lookup[element]
        except KeyError:
            raise DlogNotFound(f"no exponent in [0, {self.max}] matches") from None


def build_dlog_table(base, T: int, group: GroupOps, cap: int = DEFAULT_TABLE_CAP) -> DlogTable:
    """Precomputed powers of `base` (repeated group operation, one per entry)."""
    assert T >= 0
    if T + 1 > cap:
        raise TableTooLarge(f"{T + 1} entries exceed the cap of {cap}")
    table = DlogTable(base=base, max=T)
    current = group.identity()
    for i in range(T + 1):
        # first exponent wins if the base order is smaller than T
        table.lookup.setdefault(current, i)
        current = group.op(current, base)
    if len(table) != T + 1:
        logger.warning("dlog table has {} distinct entries for {} exponents", len(table), T + 1)
    return table


def bsgs(base, element, T: int, group: GroupOps) -> int:
    """Smallest x in [0, T] with base^x = element, in O(sqrt(T)) group operations."""
    m = math.isqrt(T) + 1
    baby: dict = {}
    current = group.identity()
    for j in range(m):
        baby.setdefault(current, j)
        current = group.op(current, base)
    giant = group.inverse(group.power(base, m))
    gamma = element
    for i in range(m + 1):
        j = baby.get(gamma)
        if j is not None and i * m + j <= T:
            return i * m + j
        gamma = group.op(gamma, giant)
    raise DlogNotFound(f"no exponent in [0, {T}] matches")
