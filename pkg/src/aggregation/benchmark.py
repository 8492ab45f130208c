from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, field, fields
from pathlib import Path

import numpy as np
from loguru import logger

from ..bgn.config import SECURITY_LEVELS, BgnConfig
from ..bgn.keys import keygen
from ..bgn.scheme import encrypt, hom_add
from ..errors import SecAggError
from ..numeric.rng import substream
from .config import SimConfig
from .energy import EnergyModel
from .rsa_baseline import rsa_aggregator_round, rsa_baseline_encrypt, rsa_test_modulus

SCHEMES = ("EC", "RSA")
ROLES = ("sensor", "aggregator")


@dataclass(slots=True)
class ReportRow:
    scheme: str
    level: int
    key_bits: int
    role: str
    energy_units: float          # per operation
    battery_left: float          # after `rounds` rounds
    msgs_per_s: float
    round_energy_units: float    # per aggregation round
    status: str = "ok"


@dataclass(slots=True)
class SeriesPoint:
    round: int
    scheme: str
    level: int
    network_energy: float


@dataclass(slots=True)
class SimReport:
    rows: list[ReportRow] = field(default_factory=list)
    series: list[SeriesPoint] = field(default_factory=list)
    k: float = 0.0
    notes: list[str] = field(default_factory=list)

    def row(self, scheme: str, level: int, role: str) -> ReportRow:
        return next(r for r in self.rows if (r.scheme, r.level, r.role) == (scheme, level, role))

    def write_csv(self, path: Path, header: str | None = None) -> None:
        _write(path, ReportRow, self.rows, [header, *self.notes] if header else self.notes)

    def write_series_csv(self, path: Path, header: str | None = None) -> None:
        _write(path, SeriesPoint, self.series, [header] if header else [])


def _write(path: Path, cls, items, comments: list[str]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow([f.name for f in fields(cls)])
        for item in items:
            writer.writerow(astuple(item))
    logger.info("wrote {} rows to {}", len(items), path)


@dataclass(frozen=True, slots=True)
class _Timings:
    """Median seconds per operation for one scheme at one level."""
    key_bits: int
    sensor: float
    aggregator: float
    round: float   # aggregator work for one round over `children` inputs


def _median(samples: list[float]) -> float:
    return float(np.median(samples))


def _run_trials(trial, n: int, workers: int) -> list[float]:
    """Results are merged in trial order whatever the worker count."""
    if workers <= 1:
        return [trial(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(trial, range(n)))


def _time(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def time_ec(level: int, trials: int, seed: int, config: SimConfig) -> _Timings:
    tau = SECURITY_LEVELS[level].tau
    pk, _ = keygen(tau, substream(seed, f"keygen-{level}"), BgnConfig(product_bound=1))
    setup = substream(seed, f"encrypt-{level}")
    base = encrypt(pk, 1, setup)

    def sensor_trial(i: int) -> float:
        rng = substream(seed, f"encrypt-{level}-{i}")
        m = rng.randrange(config.max_reading + 1)
        return _time(lambda: encrypt(pk, m, rng))

    def aggregator_trial(i: int) -> float:
        rng = substream(seed, f"aggregate-{level}-{i}")
        return _time(lambda: hom_add(pk, base, base, rng))

    sensor = _median(_run_trials(sensor_trial, trials, config.workers))
    aggregator = _median(_run_trials(aggregator_trial, trials, config.workers))
    return _Timings(pk.p.bit_length(), sensor, aggregator, config.children_per_aggregator * aggregator)


def time_rsa(level: int, trials: int, seed: int, config: SimConfig) -> _Timings:
    bits = SECURITY_LEVELS[level].rsa_bits
    N = rsa_test_modulus(bits, seed)

    def trial(i: int) -> float:
        rng = substream(seed, f"rsa-{level}-{i}")
        _, elapsed = rsa_baseline_encrypt(bits, rng.randrange(N), rng, seed)
        return elapsed

    def round_trial(i: int) -> float:
        rng = substream(seed, f"rsa-round-{level}-{i}")
        children = [rng.randrange(N) for _ in range(config.children_per_aggregator)]
        _, elapsed = rsa_aggregator_round(bits, children, rng, seed)
        return elapsed

    op = _median(_run_trials(trial, trials, config.workers))
    round_time = _median(_run_trials(round_trial, trials, config.workers))
    return _Timings(N.bit_length(), op, op, round_time)


def calibrate(seed: int, config: SimConfig, trials: int = 5) -> EnergyModel:
    """k such that a level-1 EC sensor encryption costs `config.calibration_energy`."""
    t = time_ec(1, trials, seed, config).sensor
    model = EnergyModel.calibrated(t, config.calibration_energy)
    logger.info("calibrated k = {:.3f} units/s (level-1 encryption {:.6f}s)", model.k, t)
    return model


def _rows(scheme: str, level: int, t: _Timings, model: EnergyModel, config: SimConfig) -> list[ReportRow]:
    out = []
    for role in ROLES:
        if role == "sensor":
            per_op, per_round = t.sensor, t.sensor
            capacity = config.sensor_battery
        else:
            per_op, per_round = t.aggregator, t.round
            capacity = config.aggregator_battery
        round_energy = model.energy(per_round)
        out.append(ReportRow(
            scheme=scheme,
            level=level,
            key_bits=t.key_bits,
            role=role,
            energy_units=model.energy(per_op),
            battery_left=max(0.0, capacity - config.rounds * round_energy),
            msgs_per_s=1.0 / per_round if per_round > 0 else math.inf,
            round_energy_units=round_energy,
        ))
    return out


def _failed_rows(scheme: str, level: int, error: SecAggError) -> list[ReportRow]:
    return [
        ReportRow(scheme, level, 0, role, math.nan, math.nan, math.nan, math.nan, status=type(error).__name__)
        for role in ROLES
    ]


def network_energy_series(report: SimReport, config: SimConfig) -> list[SeriesPoint]:
    """Cumulative energy spent by the whole network after each round."""
    series = []
    for level in sorted({r.level for r in report.rows}):
        for scheme in SCHEMES:
            try:
                sensor = report.row(scheme, level, "sensor")
                aggregator = report.row(scheme, level, "aggregator")
            except StopIteration:
                continue
            if sensor.status != "ok" or aggregator.status != "ok":
                continue
            per_round = (config.n_sensors * sensor.round_energy_units
                         + config.n_aggregators * aggregator.round_energy_units)
            series.extend(
                SeriesPoint(r, scheme, level, r * per_round) for r in range(1, config.rounds + 1)
            )
    return series


def run_benchmark(
    levels: set[int],
    trials: int,
    model: EnergyModel | None,
    seed: int,
    config: SimConfig | None = None,
) -> SimReport:
    """
    Times EC and RSA node operations per security level and converts the
    median times to energy with E = k*t. Without a model, k is calibrated
    on a level-1 EC encryption.
    """
    assert trials >= 1
    assert levels and levels <= set(SECURITY_LEVELS), f"levels must be within {sorted(SECURITY_LEVELS)}"
    config = config or SimConfig()
    model = model or calibrate(seed, config)

    report = SimReport(k=model.k)
    report.notes.append("RSA cost model: full-size exponent per operation; aggregator decrypts each child and re-encrypts")
    for level in sorted(levels):
        for scheme, timer in (("EC", time_ec), ("RSA", time_rsa)):
            logger.debug("benchmarking {} level {}", scheme, level)
            try:
                report.rows.extend(_rows(scheme, level, timer(level, trials, seed, config), model, config))
            except SecAggError as e:
                logger.warning("{} level {} failed: {}", scheme, level, e)
                report.rows.extend(_failed_rows(scheme, level, e))
    report.series = network_energy_series(report, config)
    return report
