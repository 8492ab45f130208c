from .curve import (
    CurveParams,
    CurvePoint,
    CompressedPoint,
    INFINITY,
    point_add,
    point_neg,
    scalar_mul,
    compress_point,
    decompress_point,
    random_point,
    point_to_hex,
    point_from_hex,
)
from .pairing import weil_pairing, modified_weil

__all__ = [
    "CurveParams", "CurvePoint", "CompressedPoint", "INFINITY",
    "point_add", "point_neg", "scalar_mul", "compress_point", "decompress_point",
    "random_point", "point_to_hex", "point_from_hex",
    "weil_pairing", "modified_weil",
]
