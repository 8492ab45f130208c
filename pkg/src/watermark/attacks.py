from __future__ import annotations

import numpy as np
from scipy import fft, ndimage

from ..numeric.rng import array_stream
from .grid import SensorGrid

# standard JPEG luminance quantisation table
LUMINANCE_TABLE = np.array([
    [16, 11, 10, 16, 24, 40, 51, 61],
    [12, 12, 14, 19, 26, 58, 60, 55],
    [14, 13, 16, 24, 40, 57, 69, 56],
    [14, 17, 22, 29, 51, 87, 80, 62],
    [18, 22, 37, 56, 68, 109, 103, 77],
    [24, 35, 55, 64, 81, 104, 113, 92],
    [49, 64, 78, 87, 103, 121, 120, 101],
    [72, 92, 95, 98, 112, 100, 103, 99],
], dtype=np.float64)

BLOCK = 8


def _to_grid(values: np.ndarray) -> SensorGrid:
    return SensorGrid(np.clip(np.rint(values), 0, 255).astype(np.uint8))


def attack_zeroing(grid: SensorGrid, size: int) -> SensorGrid:
    """Zero an s x s block centred on the grid."""
    assert size >= 0
    out = grid.copy()
    rows, cols = min(size, grid.height), min(size, grid.width)
    r0, c0 = (grid.height - rows) // 2, (grid.width - cols) // 2
    out.values[r0:r0 + rows, c0:c0 + cols] = 0
    return out


def attack_rotation(grid: SensorGrid, degrees: float) -> SensorGrid:
    """Rotate by theta then by -theta around the centre (bilinear, edges clamped)."""
    if degrees % 360 == 0:
        return grid.copy()
    values = grid.values.astype(np.float64)
    there = ndimage.rotate(values, degrees, reshape=False, order=1, mode="nearest")
    back = ndimage.rotate(there, -degrees, reshape=False, order=1, mode="nearest")
    return _to_grid(back)


def attack_gaussian(grid: SensorGrid, sigma: float, seed: int) -> SensorGrid:
    assert sigma >= 0
    if sigma == 0:
        return grid.copy()
    noise = array_stream(seed, "noise").normal(0.0, sigma, size=grid.values.shape)
    return _to_grid(grid.values.astype(np.float64) + noise)


def _blocks(values: np.ndarray) -> np.ndarray:
    h, w = values.shape
    return values.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK).swapaxes(1, 2)


def _unblocks(blocks: np.ndarray) -> np.ndarray:
    hb, wb = blocks.shape[:2]
    return blocks.swapaxes(1, 2).reshape(hb * BLOCK, wb * BLOCK)


def attack_jpeg(grid: SensorGrid, level: float) -> SensorGrid:
    """
    JPEG-style lossy transform: 8x8 orthonormal DCT, quantisation with the
    luminance table scaled by `level`, inverse DCT. Level 0 skips quantisation.
    """
    assert level >= 0
    h, w = grid.values.shape
    ph, pw = (-h) % BLOCK, (-w) % BLOCK
    padded = np.pad(grid.values.astype(np.float64) - 128.0, ((0, ph), (0, pw)), mode="edge")
    coeffs = fft.dctn(_blocks(padded), type=2, norm="ortho", axes=(2, 3))
    if level > 0:
        step = LUMINANCE_TABLE * level
        coeffs = np.rint(coeffs / step) * step
    restored = _unblocks(fft.idctn(coeffs, type=2, norm="ortho", axes=(2, 3))) + 128.0
    return _to_grid(restored[:h, :w])
