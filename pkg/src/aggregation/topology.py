from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from loguru import logger

from ..numeric.rng import substream
from .config import SimConfig


@dataclass(slots=True)
class SensorNode:
    id: int
    x: float
    y: float
    battery: float
    aggregator: int


@dataclass(slots=True)
class AggregatorNode:
    id: int
    x: float
    y: float
    battery: float


@dataclass(slots=True)
class SinkNode:
    x: float = 0.5
    y: float = 0.5


@dataclass(slots=True)
class Topology:
    """Depth-2 tree: sensors -> nearest aggregator -> sink."""
    sensors: list[SensorNode]
    aggregators: list[AggregatorNode]
    sink: SinkNode = field(default_factory=SinkNode)

    def groups(self) -> dict[int, list[SensorNode]]:
        out: dict[int, list[SensorNode]] = {a.id: [] for a in self.aggregators}
        for s in self.sensors:
            out[s.aggregator].append(s)
        return out


def nearest_aggregator(sensor_xy: np.ndarray, aggregator_xy: np.ndarray) -> np.ndarray:
    """Index of the closest aggregator per sensor; argmin keeps the lowest id on ties."""
    diff = sensor_xy[:, None, :] - aggregator_xy[None, :, :]
    return np.argmin(np.einsum("ijk,ijk->ij", diff, diff), axis=1)


def build_topology(
    n_sensors: int,
    n_aggregators: int,
    seed: int,
    config: SimConfig | None = None,
) -> Topology:
    """Uniform positions on the unit square; each sensor joins its nearest aggregator."""
    assert n_sensors >= 1 and n_aggregators >= 1
    config = config or SimConfig()
    rng = substream(seed, "topology")
    aggregators = [
        AggregatorNode(i, rng.random(), rng.random(), config.aggregator_battery)
        for i in range(n_aggregators)
    ]
    sensor_xy = np.array([(rng.random(), rng.random()) for _ in range(n_sensors)])
    aggregator_xy = np.array([(a.x, a.y) for a in aggregators])
    assignment = nearest_aggregator(sensor_xy, aggregator_xy)
    sensors = [
        SensorNode(i, float(x), float(y), config.sensor_battery, int(assignment[i]))
        for i, (x, y) in enumerate(sensor_xy)
    ]
    logger.debug("topology: {} sensors, {} aggregators (seed {})", n_sensors, n_aggregators, seed)
    return Topology(sensors, aggregators)


def topology_to_json(topology: Topology) -> str:
    return json.dumps(asdict(topology), indent=2)


def topology_from_json(text: str) -> Topology:
    data = json.loads(text)
    return Topology(
        sensors=[SensorNode(**s) for s in data["sensors"]],
        aggregators=[AggregatorNode(**a) for a in data["aggregators"]],
        sink=SinkNode(**data.get("sink", {})),
    )


def save_topology(topology: Topology, path: Path) -> None:
    Path(path).write_text(topology_to_json(topology), encoding="utf-8")


def load_topology(path: Path) -> Topology:
    return topology_from_json(Path(path).read_text(encoding="utf-8"))
