from fractions import Fraction

import pytest
from hypothesis import given, strategies

from src.errors import NonInvertible
from src.numeric.fixed import HALF, ONE_BITS, Fraction64, frac_xor
from src.numeric.fp2 import Fp2, fp2_add, fp2_inv, fp2_mul, fp2_pow

P = 419
F = Fp2.of(P)

element = strategies.builds(F.element, strategies.integers(0, P - 1), strategies.integers(0, P - 1))
nonzero = element.filter(lambda x: not x.is_zero())
fraction = strategies.integers(0, ONE_BITS - 1).map(Fraction64)


def test_non_residue_is_smallest():
    assert F.d == 2   # 419 = 3 mod 8


@given(element, element, element)
def test_field_axioms(x, y, z):
    assert fp2_add(x, y) == fp2_add(y, x)
    assert fp2_mul(x, y) == fp2_mul(y, x)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + F.zero() == x
    assert x - x == F.zero()


@given(element)
def test_one_is_identity(y):
    assert fp2_mul(F.one(), y) == y


@given(nonzero)
def test_inverse(x):
    assert fp2_inv(x) * x == F.one()
    assert x / x == 1


def test_zero_has_no_inverse():
    with pytest.raises(NonInvertible):
        F.zero().inverse()


@given(nonzero, strategies.integers(-50, 50), strategies.integers(-50, 50))
def test_power_laws(x, a, b):
    assert fp2_pow(x, a) * fp2_pow(x, b) == fp2_pow(x, a + b)


@given(nonzero)
def test_multiplicative_group_order(x):
    assert x ** (P * P - 1) == 1


def test_cube_root_of_unity():
    zeta = F.cube_root_of_unity()
    assert zeta ** 3 == 1
    assert zeta != 1
    assert not zeta.in_base_field()
    roots = [F.element(a0, a1) for a0 in range(P) for a1 in range(1, P)
             if F.element(a0, a1) ** 2 + F.element(a0, a1) + 1 == 0]
    assert zeta == min(roots, key=lambda z: (z.a0, z.a1))


def test_fraction_constants():
    assert Fraction64.one().is_one
    assert HALF.to_fraction() == Fraction(1, 2)
    assert Fraction64.from_ratio(1, 4).bits == ONE_BITS // 4


def test_frac_xor_examples():
    half, quarter = Fraction64.from_ratio(1, 2), Fraction64.from_ratio(1, 4)
    assert frac_xor(half, quarter) == Fraction64.from_ratio(3, 4)


@given(fraction)
def test_frac_xor_identity_and_self_inverse(x):
    assert frac_xor(x, Fraction64.zero()) == x
    assert frac_xor(x, x) == Fraction64.zero()


@given(fraction, fraction)
def test_frac_xor_stays_below_one(x, y):
    z = frac_xor(x, y)
    assert 0 <= z.bits < ONE_BITS
    assert frac_xor(z, y) == x


@given(fraction, strategies.integers(1, 10 ** 6))
def test_scale_floor(x, n):
    assert x.scale_floor(n) == int(x.to_fraction() * n)


@given(fraction, fraction.filter(lambda f: f.bits > 0))
def test_division_truncates_and_caps(x, y):
    q = x / y
    assert q.bits <= ONE_BITS
    assert q.to_fraction() <= min(Fraction(1), x.to_fraction() / y.to_fraction())
