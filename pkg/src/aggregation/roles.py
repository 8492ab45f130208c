from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..bgn.ciphertext import Ciphertext
from ..bgn.dlog import DlogTable
from ..bgn.keys import BgnPrivateKey, BgnPublicKey
from ..bgn.scheme import (
    build_level1_table,
    build_level2_table,
    decrypt,
    decrypt_product,
    encrypt,
    hom_add,
    hom_mul,
)
from ..errors import TableTooLarge


@dataclass(slots=True)
class SensorRole:
    """Encrypts readings. Holds the public key only."""
    pk: BgnPublicKey

    def emit(self, values: list[int], rng: random.Random) -> list[Ciphertext]:
        return [encrypt(self.pk, v, rng) for v in values]


@dataclass(slots=True)
class AggregatorRole:
    """Combines ciphertexts it cannot read. Holds the public key only."""
    pk: BgnPublicKey

    def encrypt(self, value: int, rng: random.Random) -> Ciphertext:
        return encrypt(self.pk, value, rng)

    def fold(self, vectors: list[list[Ciphertext]], width: int, rng: random.Random) -> list[Ciphertext]:
        """Component-wise homomorphic sum; no inputs gives Enc(0) per component."""
        if not vectors:
            return [encrypt(self.pk, 0, rng) for _ in range(width)]
        out = list(vectors[0])
        for vec in vectors[1:]:
            assert len(vec) == width
            out = [hom_add(self.pk, a, b, rng) for a, b in zip(out, vec)]
        return out

    def multiply(self, C1: Ciphertext, C2: Ciphertext, rng: random.Random) -> Ciphertext:
        return hom_mul(self.pk, C1, C2, rng)


@dataclass(slots=True)
class SinkRole:
    """The only holder of the private key; decryption tables are built lazily."""
    pk: BgnPublicKey
    sk: BgnPrivateKey
    _tables: dict[int, DlogTable | None] = field(default_factory=dict, repr=False)

    def add(self, C1: Ciphertext, C2: Ciphertext, rng: random.Random) -> Ciphertext:
        return hom_add(self.pk, C1, C2, rng)

    def decrypt(self, C: Ciphertext) -> int:
        if 1 not in self._tables:
            try:
                self._tables[1] = build_level1_table(self.pk, self.sk)
            except TableTooLarge:
                self._tables[1] = None
        return decrypt(self.pk, self.sk, C, self._tables[1])

    def decrypt_product(self, C: Ciphertext) -> int:
        if 2 not in self._tables:
            self._tables[2] = build_level2_table(self.pk, self.sk)
        return decrypt_product(self.pk, self.sk, C, self._tables[2])
