from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import OverlappingThresholds
from .config import WatermarkConfig


@dataclass(slots=True, eq=False)
class SensorGrid:
    """
    The network seen as a grayscale image: one 8-bit reading per node.
    Bit k addresses bit 7 - (k mod 8) of byte k // 8, row-major (MSB first).
    """
    values: np.ndarray   # uint8, shape (height, width)

    def __post_init__(self):
        self.values = np.asarray(self.values)
        assert self.values.ndim == 2, "grid must be two-dimensional"
        assert self.values.dtype == np.uint8, f"grid must be uint8, got {self.values.dtype}"

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @classmethod
    def from_bits(cls, bits: np.ndarray, width: int, height: int) -> "SensorGrid":
        return cls(np.packbits(bits.astype(np.uint8)).reshape(height, width))

    @classmethod
    def random(cls, rng: np.random.Generator, width: int = 256, height: int = 256) -> "SensorGrid":
        return cls(rng.integers(0, 256, size=(height, width), dtype=np.uint8))

    def bits(self) -> np.ndarray:
        return np.unpackbits(self.values.ravel())

    def copy(self) -> "SensorGrid":
        return SensorGrid(self.values.copy())

    def __eq__(self, other) -> bool:
        return isinstance(other, SensorGrid) and np.array_equal(self.values, other.values)


@dataclass(frozen=True, slots=True, eq=False)
class SignificanceSplit:
    msc: np.ndarray
    lsc: np.ndarray
    passive: np.ndarray


def significance(n_bits: int) -> np.ndarray:
    """u^k for every bit index."""
    return 8 - (np.arange(n_bits) % 8)


def _check_thresholds(M: int, m: int) -> None:
    if m >= M:
        raise OverlappingThresholds(f"LSC threshold m = {m} must be below MSC threshold M = {M}")


def significance_split(grid: SensorGrid, M: int = 5, m: int = 4) -> SignificanceSplit:
    _check_thresholds(M, m)
    u = significance(grid.values.size * 8)
    return SignificanceSplit(
        msc=np.flatnonzero(u >= M),
        lsc=np.flatnonzero(u <= m),
        passive=np.flatnonzero((u > m) & (u < M)),
    )


def split_for(grid: SensorGrid, config: WatermarkConfig) -> SignificanceSplit:
    return significance_split(grid, config.msc_threshold, config.lsc_threshold)


def _masks(M: int, m: int) -> tuple[int, int]:
    # u^k <= m selects the low m bits, u^k >= M the bits from position M - 1 up
    _check_thresholds(M, m)
    lsc_mask = (1 << m) - 1
    msc_mask = 0xFF & ~((1 << (M - 1)) - 1)
    return msc_mask, lsc_mask


def msc_view(grid: SensorGrid, config: WatermarkConfig | None = None) -> SensorGrid:
    config = config or WatermarkConfig()
    msc_mask, _ = _masks(config.msc_threshold, config.lsc_threshold)
    return SensorGrid(grid.values & np.uint8(msc_mask))


def lsc_view(grid: SensorGrid, config: WatermarkConfig | None = None) -> SensorGrid:
    """LSC plane stretched to the full gray range (x17 for a nibble)."""
    config = config or WatermarkConfig()
    _, lsc_mask = _masks(config.msc_threshold, config.lsc_threshold)
    scale = 255 // lsc_mask if lsc_mask else 0
    return SensorGrid(((grid.values & np.uint8(lsc_mask)).astype(np.uint16) * scale).astype(np.uint8))
