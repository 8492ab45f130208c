from __future__ import annotations

import csv
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Callable

import numpy as np
from loguru import logger

from .attacks import attack_gaussian, attack_jpeg, attack_rotation, attack_zeroing
from .ciis import Mode, ciis_params_from_seed, embed_watermark, extract_similarity
from .config import WatermarkConfig
from .grid import SensorGrid

ZEROING_SIZES = (10, 50, 100)
ROTATION_ANGLES = (5, 10, 25)
JPEG_LEVELS = (2, 5, 10)
GAUSSIAN_SIGMAS = (1, 2, 3)


@dataclass(slots=True)
class SuiteRow:
    attack: str
    parameter: float
    mode: str
    similarity: float


def standard_attacks(seed: int) -> list[tuple[str, float, Callable[[SensorGrid], SensorGrid]]]:
    attacks: list[tuple[str, float, Callable[[SensorGrid], SensorGrid]]] = []
    attacks += [("zeroing", s, lambda g, s=s: attack_zeroing(g, s)) for s in ZEROING_SIZES]
    attacks += [("rotation", a, lambda g, a=a: attack_rotation(g, a)) for a in ROTATION_ANGLES]
    attacks += [("jpeg", q, lambda g, q=q: attack_jpeg(g, q)) for q in JPEG_LEVELS]
    attacks += [("gaussian", s, lambda g, s=s: attack_gaussian(g, s, seed)) for s in GAUSSIAN_SIGMAS]
    return attacks


def attack_suite(
    grid: SensorGrid,
    seed: int,
    watermark: np.ndarray,
    config: WatermarkConfig | None = None,
    modes: tuple[Mode, ...] = (Mode.UNAUTHENTICATION, Mode.AUTHENTICATION),
) -> list[SuiteRow]:
    """Similarity after each standard attack, in each mode, on one watermarked grid."""
    config = config or WatermarkConfig()
    rows = []
    for mode in modes:
        params = ciis_params_from_seed(seed, mode, grid, config)
        marked = embed_watermark(grid, params, watermark, config)
        for name, value, attack in standard_attacks(seed):
            similarity = extract_similarity(attack(marked), params, watermark, config)
            logger.debug("{} {} ({}): {:.2f}%", name, value, mode, similarity)
            rows.append(SuiteRow(name, value, str(mode), round(similarity, 2)))
    return rows


def write_suite_csv(rows: list[SuiteRow], path: Path, header: str | None = None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh)
        writer.writerow([f.name for f in fields(SuiteRow)])
        writer.writerows(astuple(r) for r in rows)
    logger.info("wrote {} suite rows to {}", len(rows), path)
