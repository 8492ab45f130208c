from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from loguru import logger

from ..numeric.fixed import FRACTION_BITS, HALF, Fraction64
from ..numeric.rng import array_stream, substream
from .chaos import chaotic_positions
from .config import WatermarkConfig
from .grid import SensorGrid, SignificanceSplit, split_for


class Mode(StrEnum):
    AUTHENTICATION = "authentication"       # strategy seeded by the MSCs
    UNAUTHENTICATION = "unauthentication"   # strategy seeded by the key only


@dataclass(frozen=True, slots=True)
class CiisParams:
    """Embedding key: K, control parameter p, iteration count and mode."""
    key: Fraction64
    control: Fraction64
    iterations: int
    mode: Mode
    alt_seed: Fraction64    # second key value, used as M in Unauthentication mode

    def __post_init__(self):
        assert 0 < self.control.bits < HALF.bits, "control parameter must lie in (0, 1/2)"
        assert self.iterations >= 1
        assert not self.key.is_one and not self.alt_seed.is_one


def _random_fraction(rng) -> Fraction64:
    return Fraction64(rng.getrandbits(FRACTION_BITS))


def ciis_params_from_seed(
    seed: int,
    mode: Mode,
    grid: SensorGrid | None = None,
    config: WatermarkConfig | None = None,
) -> CiisParams:
    """Key material from the `watermark` sub-stream; Nc defaults to |LSC| of the grid."""
    config = config or WatermarkConfig()
    rng = substream(seed, "watermark")
    key = _random_fraction(rng)
    control = Fraction64(rng.randrange(1, HALF.bits))
    alt_seed = _random_fraction(rng)
    iterations = config.iterations
    if iterations is None:
        width, height = (grid.width, grid.height) if grid is not None else (config.width, config.height)
        iterations = width * height * config.lsc_threshold
    return CiisParams(key, control, iterations, Mode(mode), alt_seed)


def default_watermark(seed: int, length: int = 64) -> np.ndarray:
    return array_stream(seed, "watermark-bits").integers(0, 2, size=length, dtype=np.uint8)


def fold_bits(bits: np.ndarray) -> Fraction64:
    """XOR of consecutive 62-bit blocks (last one zero-padded) read as a fraction."""
    if bits.size == 0:
        return Fraction64.zero()
    pad = (-bits.size) % FRACTION_BITS
    blocks = np.concatenate([bits.astype(np.uint8), np.zeros(pad, dtype=np.uint8)]).reshape(-1, FRACTION_BITS)
    folded = np.bitwise_xor.reduce(blocks, axis=0)
    value = 0
    for b in folded:
        value = (value << 1) | int(b)
    return Fraction64(value)


def derive_mode_seed(grid: SensorGrid, split: SignificanceSplit, params: CiisParams) -> Fraction64:
    if params.mode is Mode.AUTHENTICATION:
        return fold_bits(grid.bits()[split.msc])
    return params.alt_seed


def ciis_strategy(params: CiisParams, seed: Fraction64, n: int) -> np.ndarray:
    """Length-Nc strategy over LSC positions 1..n."""
    return chaotic_positions(params.key, seed, params.control, params.iterations, n)


def last_writes(strategy: np.ndarray, watermark: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Visited 0-based positions and the watermark bit written there last.
    Step n writes watermark[n mod |w|].
    """
    written = watermark[np.arange(strategy.size) % watermark.size]
    reversed_positions = strategy[::-1] - 1
    positions, first = np.unique(reversed_positions, return_index=True)
    return positions, written[::-1][first]


def _plan(grid: SensorGrid, params: CiisParams, watermark: np.ndarray, config: WatermarkConfig):
    assert watermark.size >= 1, "watermark must not be empty"
    split = split_for(grid, config)
    seed = derive_mode_seed(grid, split, params)
    strategy = ciis_strategy(params, seed, split.lsc.size)
    positions, expected = last_writes(strategy, np.asarray(watermark, dtype=np.uint8))
    logger.debug("{} mode: {} steps visit {} of {} LSCs", params.mode, strategy.size, positions.size, split.lsc.size)
    return split.lsc[positions], expected


def embed_watermark(
    grid: SensorGrid,
    params: CiisParams,
    watermark: np.ndarray,
    config: WatermarkConfig | None = None,
) -> SensorGrid:
    """Overwrite the LSC bit at each strategy position with the watermark bit of that step."""
    config = config or WatermarkConfig()
    bit_index, expected = _plan(grid, params, watermark, config)
    bits = grid.bits()
    bits[bit_index] = expected
    return SensorGrid.from_bits(bits, grid.width, grid.height)


def extract_similarity(
    grid: SensorGrid,
    params: CiisParams,
    watermark: np.ndarray,
    config: WatermarkConfig | None = None,
) -> float:
    """Percentage of visited LSC positions holding the expected watermark bit."""
    config = config or WatermarkConfig()
    bit_index, expected = _plan(grid, params, watermark, config)
    if bit_index.size == 0:
        return 100.0
    matches = np.count_nonzero(grid.bits()[bit_index] == expected)
    return 100.0 * matches / bit_index.size
