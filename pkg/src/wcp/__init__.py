"""Wind farm cabling: negative cycle canceling over a step-cost flow network."""

from .delta import DELTA_KINDS, DeltaStrategy
from .engine import SolveLimits, Solution, solve
from .initflow import INIT_STRATEGIES, InitializationError, InitStrategy, initialize
from .model import (
    INF,
    CableType,
    CostFunction,
    Edge,
    Flow,
    InstanceError,
    InvariantError,
    WindFarm,
    check_feasible,
    farm_from_dict,
    farm_to_dict,
    flow_cost,
    load_farm,
    save_farm,
    solution_to_dict,
)
from .oracle import OracleCapError, OracleResult, oracle_optimum
from .residual import ResidualEdge, ResidualView, build_residual, residual_cost

__all__ = [
    "CableType",
    "CostFunction",
    "DELTA_KINDS",
    "DeltaStrategy",
    "Edge",
    "Flow",
    "INF",
    "INIT_STRATEGIES",
    "InitStrategy",
    "InitializationError",
    "InstanceError",
    "InvariantError",
    "OracleCapError",
    "OracleResult",
    "ResidualEdge",
    "ResidualView",
    "SolveLimits",
    "Solution",
    "WindFarm",
    "build_residual",
    "check_feasible",
    "farm_from_dict",
    "farm_to_dict",
    "flow_cost",
    "initialize",
    "load_farm",
    "oracle_optimum",
    "residual_cost",
    "save_farm",
    "solution_to_dict",
    "solve",
]

__version__ = "0.1.0"
