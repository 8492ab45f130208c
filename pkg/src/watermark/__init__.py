from .config import WatermarkConfig
from .grid import SensorGrid, SignificanceSplit, significance_split, lsc_view, msc_view
from .pgm import load_pgm, save_pgm, read_pgm, write_pgm
from .chaos import plcm_step, ci_iterate, chaotic_positions
from .ciis import (
    Mode,
    CiisParams,
    ciis_params_from_seed,
    ciis_strategy,
    default_watermark,
    derive_mode_seed,
    embed_watermark,
    extract_similarity,
)
from .attacks import attack_zeroing, attack_rotation, attack_gaussian, attack_jpeg
from .spread_spectrum import (
    ClassicalSS,
    ImprovedSS,
    NaturalWatermarking,
    SsParams,
    carriers,
    ss_embed,
    ss_detect,
    stego_ks_test,
)
from .suite import SuiteRow, attack_suite, write_suite_csv

__all__ = [
    "WatermarkConfig", "SensorGrid", "SignificanceSplit", "significance_split", "lsc_view", "msc_view",
    "load_pgm", "save_pgm", "read_pgm", "write_pgm",
    "plcm_step", "ci_iterate", "chaotic_positions",
    "Mode", "CiisParams", "ciis_params_from_seed", "ciis_strategy", "default_watermark",
    "derive_mode_seed", "embed_watermark", "extract_similarity",
    "attack_zeroing", "attack_rotation", "attack_gaussian", "attack_jpeg",
    "ClassicalSS", "ImprovedSS", "NaturalWatermarking", "SsParams", "carriers",
    "ss_embed", "ss_detect", "stego_ks_test",
    "SuiteRow", "attack_suite", "write_suite_csv",
]
