from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator

from loguru import logger

NodeKey = tuple[str, int]   # ("sensor" | "aggregator", id)


@dataclass(frozen=True, slots=True)
class EnergyModel:
    """Energy charged for a crypto operation: k * measured seconds."""
    k: float

    def energy(self, seconds: float) -> float:
        return self.k * seconds

    @staticmethod
    def calibrated(reference_seconds: float, reference_energy: float = 0.02) -> "EnergyModel":
        """Pick k so that an operation taking `reference_seconds` costs `reference_energy` units."""
        assert reference_seconds > 0
        return EnergyModel(reference_energy / reference_seconds)


@dataclass(slots=True)
class EnergyLedger:
    """Battery levels per node, drained by timed operations."""
    model: EnergyModel
    batteries: dict[NodeKey, float] = field(default_factory=dict)
    spent: dict[NodeKey, float] = field(default_factory=dict)

    @staticmethod
    def for_topology(topology, model: EnergyModel) -> "EnergyLedger":
        ledger = EnergyLedger(model)
        for s in topology.sensors:
            ledger.batteries[("sensor", s.id)] = s.battery
        for a in topology.aggregators:
            ledger.batteries[("aggregator", a.id)] = a.battery
        return ledger

    def alive(self, node: NodeKey) -> bool:
        return self.batteries.get(node, 0.0) > 0.0

    def debit(self, node: NodeKey, seconds: float) -> float:
        cost = self.model.energy(seconds)
        before = self.batteries.get(node, 0.0)
        self.batteries[node] = max(0.0, before - cost)
        self.spent[node] = self.spent.get(node, 0.0) + cost
        if before > 0.0 and self.batteries[node] == 0.0:
            logger.info("{} {} ran out of battery", *node)
        return cost

    @contextmanager
    def charge(self, node: NodeKey) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.debit(node, time.perf_counter() - start)

    def total_spent(self) -> float:
        return sum(self.spent.values())


@contextmanager
def maybe_charge(ledger: EnergyLedger | None, node: NodeKey) -> Iterator[None]:
    if ledger is None:
        yield
    else:
        with ledger.charge(node):
            yield
