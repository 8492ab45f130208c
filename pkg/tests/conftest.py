import random

import numpy as np
import pytest

from src.bgn.config import SECURITY_LEVELS, BgnConfig
from src.bgn.keys import keygen
from src.ec.curve import CurveParams
from src.numeric.rng import substream

TOY_P = 419
TOY_Q1, TOY_Q2 = 5, 7


@pytest.fixture(scope="session")
def toy_curve():
    return CurveParams.supersingular(TOY_P)


@pytest.fixture(scope="session")
def toy_key():
    """q1 = 5, q2 = 7: n = 35, l = 12, p = 419, T = T2 = 6."""
    return keygen(3, random.Random(1), primes=(TOY_Q1, TOY_Q2))


@pytest.fixture(scope="session")
def wide_key():
    """Toy-sized key with q2 = 37 so that products up to 36 decrypt."""
    return keygen(3, random.Random(2), primes=(5, 37))


@pytest.fixture(scope="session")
def sim_key():
    """A 20-bit-prime key sized for network aggregation: T = 2^16 - 1, T2 = 2^16."""
    return keygen(20, substream(7, "keygen"), BgnConfig(product_bound=2 ** 16))


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def np_rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def level4_key():
    """tau = 80 primes (|p| near 167 bits); products capped at 50 * 50."""
    return keygen(SECURITY_LEVELS[4].tau, substream(1, "keygen"), BgnConfig(product_bound=2500))
