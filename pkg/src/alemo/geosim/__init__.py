"""Desk-scale fractured geothermal reservoir simulator and NPV problem."""
from .config import DfnParams, EconomicParams, ReservoirConfig, Scenario, WellLayout, load_scenario, nine_spot, scenario_from_dict
from .dfn import CellProperties, DfnSpec, generate_dfn, rasterize_dfn
from .economics import npv
from .flow import FlowSolution, PressureSystem, solve_pressure
from .heat import HeatModel, ReservoirState, step_heat
from .io import export_snapshot, read_snapshot
from .problem import GeothermalProblem, geothermal_problem
from .simulate import Reservoir, SimulationSeries, simulate_schedule

__all__ = [
    "CellProperties", "DfnParams", "DfnSpec", "EconomicParams", "FlowSolution", "GeothermalProblem",
    "HeatModel", "PressureSystem", "Reservoir", "ReservoirConfig", "ReservoirState", "Scenario",
    "SimulationSeries", "WellLayout", "export_snapshot", "generate_dfn", "geothermal_problem",
    "load_scenario", "nine_spot", "npv", "rasterize_dfn", "read_snapshot", "scenario_from_dict",
    "simulate_schedule", "solve_pressure", "step_heat",
]
