"""The two-objective injection-scheduling problem."""
from __future__ import annotations

import threading

import numpy as np

from ..core import BoxBounds
from .config import Scenario, load_scenario
from .dfn import DfnSpec
from .economics import npv
from .simulate import Reservoir, SimulationSeries


class GeothermalProblem:
    """Minimize (-NPV_long, -NPV_short) over injector rates.

    The decision vector holds one rate per injector and control step,
    injector-major. One ``evaluate`` runs exactly one simulation.
    """

    def __init__(self, scenario: Scenario | None = None, dfn: DfnSpec | None = None):
        self.scenario = scenario if scenario is not None else load_scenario()
        self.reservoir = Reservoir(self.scenario, dfn)
        w = self.scenario.wells
        self.d = w.n_injectors * w.n_steps
        self.m = 2
        self.bounds = BoxBounds(np.zeros(self.d), np.full(self.d, w.max_rate))
        self._lock = threading.Lock()
        self.simulations = 0

    def simulate(self, x) -> SimulationSeries:
        with self._lock:
            self.simulations += 1
        return self.reservoir.simulate(x)

    def npv_pair(self, series: SimulationSeries) -> tuple[float, float]:
        econ = self.scenario.economics
        rc = self.scenario.reservoir.rho_c_w
        return npv(series, econ, rc), npv(series, econ, rc, econ.short_window_days)

    def evaluate(self, x) -> np.ndarray:
        long_, short = self.npv_pair(self.simulate(x))
        # 0.0 - v keeps a zero NPV as +0.0
        return np.array([0.0 - long_, 0.0 - short])


def geothermal_problem(scenario=None, dfn: DfnSpec | None = None) -> GeothermalProblem:
    """``scenario`` may be a Scenario, a path to a scenario file or ``None`` for the default."""
    if scenario is None or isinstance(scenario, Scenario):
        return GeothermalProblem(scenario, dfn)
    return GeothermalProblem(load_scenario(scenario), dfn)
