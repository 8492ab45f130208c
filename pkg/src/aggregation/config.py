from __future__ import annotations

from dataclasses import dataclass


@dataclass(slots=True)
class SimConfig:
    """
    Configuration of the aggregation simulator and the energy benchmark.
    Defaults follow the reference scenario: 500 sensors with 100-unit
    batteries around 50 aggregators with 1000-unit batteries.
    """
    n_sensors: int = 500
    n_aggregators: int = 50
    sensor_battery: float = 100.0
    aggregator_battery: float = 1000.0
    max_reading: int = 10
    tau: int = 20                  # key size used by `simulate` when no key file is given
    product_bound: int = 2 ** 16   # T2 for simulation keys
    trials: int = 20
    rounds: int = 100              # length of the per-round network energy series
    children_per_aggregator: int = 10
    workers: int = 1
    calibration_energy: float = 0.02   # level-1 EC sensor encryption, in battery units
