"""Energy-efficient 3D deployment planner for UAV-mounted aerial access
points: air-to-ground channel model, uplink power/rate analysis, energy
model, altitude optimization, circle-packing placement and a Monte-Carlo
validation oracle."""

from .params import EnvironmentParams, SystemParams, UavEnergyParams
from .gee import DeploymentSolution, solve_p1
from .packing import PlacementPlan, run_algorithm1

__all__ = [
    "EnvironmentParams",
    "SystemParams",
    "UavEnergyParams",
    "DeploymentSolution",
    "solve_p1",
    "PlacementPlan",
    "run_algorithm1",
]

__version__ = "0.1.0"
