import random

import pytest
from hypothesis import given, settings, strategies

from src.bgn.dlog import CurveGroup, PairingGroup, bsgs, build_dlog_table
from src.bgn.scheme import pairing_constants
from src.ec.curve import INFINITY, scalar_mul
from src.errors import DlogNotFound, TableTooLarge
from src.numeric.fp2 import Fp2


def test_empty_range_table(toy_key):
    pk, _ = toy_key
    table = build_dlog_table(pk.g, 0, CurveGroup(pk.curve))
    assert table.lookup == {INFINITY: 0}


def test_toy_table_entries_distinct(toy_key):
    pk, sk = toy_key
    base = scalar_mul(sk.q1, pk.g, pk.curve)
    table = build_dlog_table(base, 6, CurveGroup(pk.curve))
    assert len(table) == 7
    assert sorted(table.lookup.values()) == list(range(7))


def test_table_cap():
    with pytest.raises(TableTooLarge):
        build_dlog_table(None, 10, CurveGroup(None), cap=5)


def test_lookup_outside_range(toy_key):
    pk, _ = toy_key
    table = build_dlog_table(pk.g, 3, CurveGroup(pk.curve))
    with pytest.raises(DlogNotFound):
        table.log(scalar_mul(4, pk.g, pk.curve))


@settings(max_examples=100, deadline=None)
@given(strategies.integers(0, 2 ** 16 - 1))
def test_bsgs_agrees_with_table(sim_key, x):
    pk, _ = sim_key
    group = CurveGroup(pk.curve)
    assert bsgs(pk.g, scalar_mul(x, pk.g, pk.curve), 2 ** 16 - 1, group) == x


def test_bsgs_and_table_on_curve(toy_key):
    pk, _ = toy_key
    group = CurveGroup(pk.curve)
    table = build_dlog_table(pk.g, 34, group)
    for x in range(35):
        element = scalar_mul(x, pk.g, pk.curve)
        assert table.log(element) == bsgs(pk.g, element, 34, group) == x


def test_bsgs_in_pairing_group(toy_key):
    pk, _ = toy_key
    g1, _ = pairing_constants(pk)
    group = PairingGroup(Fp2.of(pk.p))
    table = build_dlog_table(g1, 34, group)
    rng = random.Random(3)
    for _ in range(20):
        x = rng.randrange(35)
        assert table.log(g1 ** x) == bsgs(g1, g1 ** x, 34, group) == x


def test_bsgs_not_found(toy_key):
    pk, _ = toy_key
    with pytest.raises(DlogNotFound):
        bsgs(pk.g, scalar_mul(20, pk.g, pk.curve), 10, CurveGroup(pk.curve))
