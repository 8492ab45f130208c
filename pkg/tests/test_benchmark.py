import csv
import math
import random

import pytest

from src.aggregation.benchmark import SimReport, network_energy_series, run_benchmark
from src.aggregation.config import SimConfig
from src.aggregation.energy import EnergyModel
from src.aggregation.rsa_baseline import (
    RSA_MODULUS_BITS,
    rsa_aggregator_round,
    rsa_baseline_encrypt,
    rsa_test_modulus,
)

QUICK = SimConfig(rounds=5, children_per_aggregator=4, n_sensors=10, n_aggregators=2)


def test_rsa_modulus_sizes():
    assert rsa_test_modulus(472).bit_length() == 472
    assert rsa_test_modulus(472, 0) == rsa_test_modulus(472, 0)
    assert rsa_test_modulus(472, 1) != rsa_test_modulus(472, 0)


def test_rsa_encrypt_is_seeded():
    a, _ = rsa_baseline_encrypt(472, 12345, random.Random(9))
    b, _ = rsa_baseline_encrypt(472, 12345, random.Random(9))
    assert a == b


def test_rsa_encrypt_zero_is_timed():
    c, elapsed = rsa_baseline_encrypt(472, 0, random.Random(1))
    assert c == 0
    assert elapsed >= 0.0


def test_rsa_cost_grows_with_modulus():
    def median_time(bits):
        rng = random.Random(bits)
        return sorted(rsa_baseline_encrypt(bits, 7, rng)[1] for _ in range(5))[2]

    assert median_time(RSA_MODULUS_BITS[-1]) > median_time(RSA_MODULUS_BITS[0])


def test_rsa_aggregator_round():
    out, elapsed = rsa_aggregator_round(472, [3, 5, 7], random.Random(2))
    assert 0 <= out < rsa_test_modulus(472)
    assert elapsed > 0.0


def test_level_one_benchmark():
    report = run_benchmark({1}, 3, EnergyModel(1.0), seed=0, config=QUICK)
    assert report.k == 1.0
    assert {(r.scheme, r.role) for r in report.rows} == {
        ("EC", "sensor"), ("EC", "aggregator"), ("RSA", "sensor"), ("RSA", "aggregator"),
    }
    assert report.row("RSA", 1, "sensor").key_bits == 472
    assert 38 <= report.row("EC", 1, "sensor").key_bits <= 60
    for row in report.rows:
        assert row.status == "ok"
        assert row.energy_units > 0 and row.round_energy_units > 0
        assert 0.0 <= row.battery_left <= QUICK.aggregator_battery
    rsa = report.row("RSA", 1, "aggregator")
    # decrypt four children, re-encrypt the sum
    assert rsa.round_energy_units > 2 * rsa.energy_units


def test_series_accumulates_per_round():
    report = run_benchmark({1}, 2, EnergyModel(1.0), seed=0, config=QUICK)
    ec = [p for p in report.series if p.scheme == "EC"]
    assert [p.round for p in ec] == [1, 2, 3, 4, 5]
    assert ec[4].network_energy == pytest.approx(5 * ec[0].network_energy)
    assert len(network_energy_series(SimReport(), QUICK)) == 0


def test_report_csv(tmp_path):
    report = run_benchmark({1}, 2, EnergyModel(1.0), seed=0, config=QUICK)
    report.write_csv(tmp_path / "bench.csv", "secagg bench --levels 1")
    report.write_series_csv(tmp_path / "series.csv")
    lines = (tmp_path / "bench.csv").read_text().splitlines()
    assert lines[0] == "# secagg bench --levels 1"
    body = [line for line in lines if not line.startswith("#")]
    rows = list(csv.DictReader(body))
    assert list(rows[0]) == [
        "scheme", "level", "key_bits", "role", "energy_units",
        "battery_left", "msgs_per_s", "round_energy_units", "status",
    ]
    assert len(rows) == 4
    series = list(csv.DictReader((tmp_path / "series.csv").read_text().splitlines()))
    assert len(series) == 2 * QUICK.rounds


def test_calibrated_model():
    report = run_benchmark({1}, 3, None, seed=0, config=QUICK)
    assert report.k > 0
    # calibration and measurement use separate medians; only the order of magnitude is stable
    assert 0.002 < report.row("EC", 1, "sensor").energy_units < 0.2


@pytest.mark.slow
def test_level_four_against_rsa():
    report = run_benchmark({4}, 5, EnergyModel(1.0), seed=0, config=SimConfig(rounds=10))
    assert 161 <= report.row("EC", 4, "sensor").key_bits <= 200
    assert report.row("RSA", 4, "sensor").key_bits == 1891
    assert report.row("EC", 4, "sensor").energy_units < report.row("RSA", 4, "sensor").energy_units
    ec, rsa = report.row("EC", 4, "aggregator"), report.row("RSA", 4, "aggregator")
    assert rsa.round_energy_units / ec.round_energy_units > 10
    assert not math.isnan(ec.msgs_per_s)
