from __future__ import annotations

from dataclasses import dataclass


@dataclass(slots=True)
class WatermarkConfig:
    """
    Thresholds on the bit significance u^k = 8 - (k mod 8): bits with
    u^k >= msc_threshold are MSCs, bits with u^k <= lsc_threshold are LSCs.
    The defaults split every byte into its top and bottom nibble.
    """
    msc_threshold: int = 5      # M
    lsc_threshold: int = 4      # m
    iterations: int | None = None   # Nc; None means one step per LSC bit
    watermark_bits: int = 64
    width: int = 256
    height: int = 256
