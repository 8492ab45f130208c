from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from loguru import logger

from ..bgn.ciphertext import Ciphertext
from ..bgn.keys import BgnPrivateKey, BgnPublicKey
from .energy import EnergyLedger, maybe_charge
from .roles import AggregatorRole, SensorRole, SinkRole
from .topology import Topology


@dataclass(frozen=True, slots=True)
class PipelineResult:
    """Aggregates as exact (numerator, denominator) pairs."""
    pipeline: str
    truth: tuple[int, int]
    decrypted: tuple[int, int]

    @property
    def value(self) -> Fraction | None:
        """None when the denominator is 0 (no data, or all weights 0)."""
        num, den = self.decrypted
        return None if den == 0 else Fraction(num, den)

    @property
    def matches(self) -> bool:
        return self.truth == self.decrypted


class AggregationPipeline(ABC):
    """
    One aggregate computed over the sensor -> aggregator -> sink tree.
    `run` drives the three stages; subclasses decide what the sensors
    encrypt, what each aggregator forwards and how the sink settles.
    """
    name: ClassVar[str]
    width: ClassVar[int] = 1   # level-1 components per sensor message

    @abstractmethod
    def sensor_values(self, reading: int) -> list[int]:
        ...

    @abstractmethod
    def settle(self, totals: list[int]) -> tuple[int, int]:
        ...

    @abstractmethod
    def oracle(self, groups: dict[int, list[int]], weights: list[int] | None) -> tuple[int, int]:
        ...

    def forward(
        self,
        role: AggregatorRole,
        children: list[list[Ciphertext]],
        aggregator_id: int,
        weights: list[int] | None,
        rng: random.Random,
    ) -> list[Ciphertext]:
        return role.fold(children, self.width, rng)

    def collect(self, sink: SinkRole, outputs: list[list[Ciphertext]], rng: random.Random) -> list[int]:
        """Homomorphically add the aggregator outputs, then decrypt each component once."""
        combined = list(outputs[0])
        for vec in outputs[1:]:
            combined = [sink.add(a, b, rng) for a, b in zip(combined, vec)]
        return [sink.decrypt(c) for c in combined]

    def run(
        self,
        topology: Topology,
        pk: BgnPublicKey,
        sk: BgnPrivateKey,
        readings: list[int],
        rng: random.Random,
        weights: list[int] | None = None,
        ledger: EnergyLedger | None = None,
    ) -> PipelineResult:
        assert len(readings) == len(topology.sensors), "one reading per sensor"
        sensor, aggregator, sink = SensorRole(pk), AggregatorRole(pk), SinkRole(pk, sk)

        outputs: list[list[Ciphertext]] = []
        emitted: dict[int, list[int]] = {}
        for agg_id, children in topology.groups().items():
            if ledger is not None and not ledger.alive(("aggregator", agg_id)):
                # its sensors have no route to the sink
                logger.debug("{}: aggregator {} is down, dropping {} sensors", self.name, agg_id, len(children))
                continue
            batch: list[list[Ciphertext]] = []
            emitted[agg_id] = []
            for s in children:
                node = ("sensor", s.id)
                if ledger is not None and not ledger.alive(node):
                    continue
                with maybe_charge(ledger, node):
                    batch.append(sensor.emit(self.sensor_values(readings[s.id]), rng))
                emitted[agg_id].append(readings[s.id])
            with maybe_charge(ledger, ("aggregator", agg_id)):
                outputs.append(self.forward(aggregator, batch, agg_id, weights, rng))
            logger.debug("{}: aggregator {} folded {} messages", self.name, agg_id, len(batch))

        if outputs:
            decrypted = self.settle(self.collect(sink, outputs, rng))
        else:
            logger.warning("{}: no aggregator reached the sink", self.name)
            decrypted = self.oracle({}, weights)
        truth = self.oracle(emitted, weights)
        if decrypted != truth:
            logger.warning("{}: decrypted {} differs from {}", self.name, decrypted, truth)
        return PipelineResult(self.name, truth, decrypted)


class SumPipeline(AggregationPipeline):
    name = "sum"

    def sensor_values(self, reading: int) -> list[int]:
        return [reading]

    def settle(self, totals: list[int]) -> tuple[int, int]:
        return totals[0], 1

    def oracle(self, groups, weights) -> tuple[int, int]:
        return sum(sum(g) for g in groups.values()), 1


class MeanPipeline(AggregationPipeline):
    """Sensors send Enc(x); each aggregator also forwards Enc(k) for its k children."""
    name = "mean"

    def sensor_values(self, reading: int) -> list[int]:
        return [reading]

    def forward(self, role, children, aggregator_id, weights, rng) -> list[Ciphertext]:
        return role.fold(children, 1, rng) + [role.encrypt(len(children), rng)]

    def settle(self, totals: list[int]) -> tuple[int, int]:
        return totals[0], totals[1]

    def oracle(self, groups, weights) -> tuple[int, int]:
        return sum(sum(g) for g in groups.values()), sum(len(g) for g in groups.values())


class VariancePipeline(AggregationPipeline):
    """
    Sensors send Enc(x) and Enc(x^2); aggregators add both and forward a count.
    The sink reports Var = (n*Sum(x^2) - Sum(x)^2) / n^2.
    """
    name = "variance"
    width = 2

    def sensor_values(self, reading: int) -> list[int]:
        return [reading, reading * reading]

    def forward(self, role, children, aggregator_id, weights, rng) -> list[Ciphertext]:
        return role.fold(children, 2, rng) + [role.encrypt(len(children), rng)]

    @staticmethod
    def _variance(sx: int, sy: int, n: int) -> tuple[int, int]:
        return (n * sy - sx * sx, n * n) if n else (0, 0)

    def settle(self, totals: list[int]) -> tuple[int, int]:
        return self._variance(*totals)

    def oracle(self, groups, weights) -> tuple[int, int]:
        xs = [x for g in groups.values() for x in g]
        return self._variance(sum(xs), sum(x * x for x in xs), len(xs))


class WeightedMeanPipeline(AggregationPipeline):
    """
    Each aggregator pairs its encrypted sub-sum with its encrypted weight,
    forwarding the level-2 product and Enc(w). The sink decrypts every
    product and adds the plaintexts.
    """
    name = "weighted_mean"

    def sensor_values(self, reading: int) -> list[int]:
        return [reading]

    def forward(self, role, children, aggregator_id, weights, rng) -> list[Ciphertext]:
        assert weights is not None, "weighted mean needs one weight per aggregator"
        subtotal = role.fold(children, 1, rng)[0]
        weight = role.encrypt(weights[aggregator_id], rng)
        return [role.multiply(subtotal, weight, rng), weight]

    def collect(self, sink: SinkRole, outputs, rng) -> list[int]:
        numerator = sum(sink.decrypt_product(product) for product, _ in outputs)
        weight_sum = outputs[0][1]
        for _, w in outputs[1:]:
            weight_sum = sink.add(weight_sum, w, rng)
        return [numerator, sink.decrypt(weight_sum)]

    def settle(self, totals: list[int]) -> tuple[int, int]:
        return totals[0], totals[1]

    def oracle(self, groups, weights) -> tuple[int, int]:
        assert weights is not None
        return (
            sum(weights[agg] * sum(g) for agg, g in groups.items()),
            sum(weights[agg] for agg in groups),
        )


PIPELINES: dict[str, type[AggregationPipeline]] = {
    cls.name: cls for cls in (SumPipeline, MeanPipeline, VariancePipeline, WeightedMeanPipeline)
}


def make_pipeline(name: str) -> AggregationPipeline:
    try:
        return PIPELINES[name]()
    except KeyError:
        raise ValueError(f"unknown pipeline {name!r} (choose from {', '.join(PIPELINES)})") from None


def run_pipeline_sum(topology, pk, sk, readings, rng, ledger=None) -> PipelineResult:
    return SumPipeline().run(topology, pk, sk, readings, rng, ledger=ledger)


def run_pipeline_mean(topology, pk, sk, readings, rng, ledger=None) -> PipelineResult:
    return MeanPipeline().run(topology, pk, sk, readings, rng, ledger=ledger)


def run_pipeline_variance(topology, pk, sk, readings, rng, ledger=None) -> PipelineResult:
    return VariancePipeline().run(topology, pk, sk, readings, rng, ledger=ledger)


def run_pipeline_weighted_mean(topology, pk, sk, readings, weights, rng, ledger=None) -> PipelineResult:
    assert len(weights) == len(topology.aggregators), "one weight per aggregator"
    return WeightedMeanPipeline().run(topology, pk, sk, readings, rng, weights=weights, ledger=ledger)
