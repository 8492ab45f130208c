from .config import SimConfig
from .topology import (
    AggregatorNode,
    SensorNode,
    SinkNode,
    Topology,
    build_topology,
    load_topology,
    save_topology,
    topology_from_json,
    topology_to_json,
)
from .energy import EnergyLedger, EnergyModel
from .roles import AggregatorRole, SensorRole, SinkRole
from .pipelines import (
    PIPELINES,
    AggregationPipeline,
    PipelineResult,
    make_pipeline,
    run_pipeline_mean,
    run_pipeline_sum,
    run_pipeline_variance,
    run_pipeline_weighted_mean,
)
from .rsa_baseline import RSA_MODULUS_BITS, rsa_aggregator_round, rsa_baseline_encrypt, rsa_test_modulus
from .benchmark import ReportRow, SeriesPoint, SimReport, calibrate, network_energy_series, run_benchmark

__all__ = [
    "SimConfig",
    "AggregatorNode", "SensorNode", "SinkNode", "Topology", "build_topology",
    "load_topology", "save_topology", "topology_from_json", "topology_to_json",
    "EnergyLedger", "EnergyModel",
    "AggregatorRole", "SensorRole", "SinkRole",
    "PIPELINES", "AggregationPipeline", "PipelineResult", "make_pipeline",
    "run_pipeline_mean", "run_pipeline_sum", "run_pipeline_variance", "run_pipeline_weighted_mean",
    "RSA_MODULUS_BITS", "rsa_aggregator_round", "rsa_baseline_encrypt", "rsa_test_modulus",
    "ReportRow", "SeriesPoint", "SimReport", "calibrate", "network_energy_series", "run_benchmark",
]
