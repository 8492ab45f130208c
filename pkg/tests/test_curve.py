import random

import pytest
from hypothesis import given, strategies

from src.ec.curve import (
    INFINITY,
    CompressedPoint,
    CurveParams,
    CurvePoint,
    compress_point,
    compressed_size_bits,
    decompress_point,
    point_add,
    point_from_hex,
    point_neg,
    point_order_is,
    point_to_hex,
    random_point,
    scalar_mul,
)
from src.errors import CannotCompressInfinity, InvalidCompressedPoint, NotOnCurve
from src.numeric.modular import is_quadratic_residue

P = 419
CURVE = CurveParams.supersingular(P)
ALL_POINTS = [INFINITY] + [CurvePoint(x, y) for x in range(P) for y in range(P) if CURVE.contains(CurvePoint(x, y))]

point = strategies.sampled_from(ALL_POINTS)


def test_group_has_p_plus_one_points():
    assert len(ALL_POINTS) == P + 1


def test_singular_curve_rejected():
    with pytest.raises(NotOnCurve):
        CurveParams(P, 0, 0)


def test_point_constructor_validates():
    assert CURVE.point(0, 1) == CurvePoint(0, 1)
    with pytest.raises(NotOnCurve):
        CURVE.point(1, 1)


def test_addition_examples():
    A = CurvePoint(0, 1)
    assert point_add(A, INFINITY, CURVE) == A
    assert point_add(A, CurvePoint(0, 418), CURVE) is INFINITY
    assert point_add(A, A, CURVE) == CurvePoint(0, 418)


@given(point, point, point)
def test_group_law(A, B, C):
    assert point_add(A, B, CURVE) == point_add(B, A, CURVE)
    assert point_add(point_add(A, B, CURVE), C, CURVE) == point_add(A, point_add(B, C, CURVE), CURVE)
    assert point_add(A, point_neg(A, CURVE), CURVE) == INFINITY
    assert CURVE.contains(point_add(A, B, CURVE))


@given(point, strategies.integers(0, 60))
def test_scalar_mul_matches_repeated_addition(A, k):
    expected = INFINITY
    for _ in range(k):
        expected = point_add(expected, A, CURVE)
    assert scalar_mul(k, A, CURVE) == expected
    assert scalar_mul(-k, A, CURVE) == point_neg(expected, CURVE)


def test_scalar_mul_examples():
    A = CurvePoint(0, 1)
    assert scalar_mul(0, A, CURVE) == INFINITY
    assert scalar_mul(3, A, CURVE) == INFINITY
    assert all(scalar_mul(P + 1, B, CURVE) == INFINITY for B in ALL_POINTS)


def test_random_points_are_on_curve():
    rng = random.Random(5)
    samples = [random_point(CURVE, rng) for _ in range(200)]
    assert all(CURVE.contains(S) and not S.is_infinity for S in samples)
    assert len(set(samples)) > 100


def test_random_point_general_curve():
    curve = CurveParams(P, 2, 3)
    rng = random.Random(6)
    assert all(curve.contains(random_point(curve, rng)) for _ in range(50))


def test_compression_examples():
    assert compress_point(CurvePoint(0, 1)) == CompressedPoint(0, 1)
    assert compress_point(CurvePoint(0, 418)) == CompressedPoint(0, 0)
    assert decompress_point(CompressedPoint(0, 1), CURVE) == CurvePoint(0, 1)
    assert decompress_point(CompressedPoint(0, 0), CURVE) == CurvePoint(0, 418)
    with pytest.raises(CannotCompressInfinity):
        compress_point(INFINITY)


def test_decompress_rejects_non_abscissa():
    general = CurveParams(P, 2, 3)
    x = next(x for x in range(P) if not is_quadratic_residue(general.rhs(x), P))
    with pytest.raises(InvalidCompressedPoint):
        decompress_point(CompressedPoint(x, 0), general)
    with pytest.raises(InvalidCompressedPoint):
        decompress_point(CompressedPoint(P, 0), CURVE)


def test_compression_roundtrip_on_every_point():
    for A in ALL_POINTS[1:]:
        assert decompress_point(compress_point(A), CURVE) == A


@pytest.mark.slow
def test_compression_roundtrip_at_level_four(level4_key):
    curve = level4_key[0].curve
    rng = random.Random(167)
    for _ in range(1000):
        A = random_point(curve, rng)
        assert decompress_point(compress_point(A), curve) == A
    assert compressed_size_bits(curve) == curve.p.bit_length() + 1


def test_hex_form():
    assert point_to_hex(INFINITY) == "inf"
    assert point_from_hex("inf", CURVE) is INFINITY
    for A in ALL_POINTS[1:50]:
        assert point_from_hex(point_to_hex(A), CURVE) == A
    with pytest.raises(InvalidCompressedPoint):
        point_from_hex("zz", CURVE)


def test_compressed_size():
    assert compressed_size_bits(CURVE) == 10


def test_point_order():
    A = CurvePoint(0, 1)
    assert point_order_is(A, 3, [3], CURVE)
    assert not point_order_is(A, 6, [2, 3], CURVE)
