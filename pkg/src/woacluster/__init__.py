"""Round-based WSN energy simulator with pluggable cluster-head selection."""

__version__ = "0.1.0"

from .energy import RadioParams, aggregation_energy, rx_energy, tx_energy
from .network import Network, NodeState, ScenarioConfig, deploy_nodes, distance
from .protocols import (
    BS_ID,
    STRATEGY_NAMES,
    ChAssignment,
    FitnessWeights,
    PsoParams,
    SelectionContext,
    assign_members,
    ch_fitness,
    make_strategy,
)
from .simulation import LifetimeSummary, RoundMetrics, SimulationResult, run_round, run_simulation
from .woa import WoaParams, WoaSettings, woa_optimize

__all__ = [
    "BS_ID",
    "STRATEGY_NAMES",
    "ChAssignment",
    "FitnessWeights",
    "LifetimeSummary",
    "Network",
    "NodeState",
    "PsoParams",
    "RadioParams",
    "RoundMetrics",
    "ScenarioConfig",
    "SelectionContext",
    "SimulationResult",
    "WoaParams",
    "WoaSettings",
    "aggregation_energy",
    "assign_members",
    "ch_fitness",
    "deploy_nodes",
    "distance",
    "make_strategy",
    "run_round",
    "run_simulation",
    "rx_energy",
    "tx_energy",
    "woa_optimize",
]
