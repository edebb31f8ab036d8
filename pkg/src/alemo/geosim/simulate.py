"""Run an injection schedule through the flow and heat models."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import Scenario
from .dfn import CellProperties, DfnSpec, generate_dfn, rasterize_dfn
from .flow import PressureSystem
from .heat import HeatModel, ReservoirState, step_heat


@dataclass(frozen=True)
class SimulationSeries:
    step_days: np.ndarray  # length of each control step
    end_days: np.ndarray  # cumulative time at the end of each step
    producer_T: np.ndarray  # (n_steps, n_producers) step-averaged outlet temperature, K
    producer_rates: np.ndarray  # (n_steps, n_producers) m^3/s
    injector_rates: np.ndarray  # (n_steps, n_injectors) m^3/s
    T_inj: float
    energy_out: np.ndarray  # J per step above T_inj
    energy_error: np.ndarray  # relative audit error per step
    mass_balance: np.ndarray  # relative well-rate imbalance per step
    T_min: float
    T_max: float

    @property
    def n_steps(self) -> int:
        return len(self.step_days)


class Reservoir:
    """A scenario with its fracture network rasterized and flow operator factorized."""

    def __init__(self, scenario: Scenario, dfn: DfnSpec | None = None):
        self.scenario = scenario
        cfg = scenario.reservoir
        self.dfn = dfn if dfn is not None else generate_dfn(scenario.dfn, cfg.lx, cfg.ly)
        wells = scenario.wells if scenario.dfn.stimulate_wells else None
        self.props: CellProperties = rasterize_dfn(self.dfn, cfg, wells)
        self.pressure = PressureSystem(self.props, cfg, scenario.wells)
        self.heat = HeatModel(self.props, cfg)

    def initial_state(self) -> ReservoirState:
        cfg = self.scenario.reservoir
        T_m = np.full(cfg.n_cells, cfg.T_init)
        T_f = np.where(self.props.fracture, cfg.T_init, np.nan)
        return ReservoirState(np.full(cfg.n_cells, cfg.p_init), T_m, T_f, 0.0)

    def schedule_matrix(self, x) -> np.ndarray:
        """Reshape a flat decision vector to (n_injectors, n_steps), injector-major."""
        w = self.scenario.wells
        x = np.asarray(x, dtype=float)
        if x.size != w.n_injectors * w.n_steps:
            raise ValueError(f"schedule needs {w.n_injectors * w.n_steps} rates, got {x.size}")
        S = x.reshape(w.n_injectors, w.n_steps)
        if np.any(S < 0) or np.any(S > w.max_rate):
            raise ValueError(f"injection rates must lie in [0, {w.max_rate}] m^3/s")
        return S

    def simulate(self, schedule, on_step=None) -> SimulationSeries:
        """Quasi-steady flow then heat transport for each control step.

        ``on_step(k, state)`` is called after every step, e.g. for snapshots.
        """
        sc = self.scenario
        cfg, wells = sc.reservoir, sc.wells
        S = self.schedule_matrix(schedule)
        n = wells.n_steps
        n_p = len(wells.producers)
        prod_T = np.empty((n, n_p))
        prod_q = np.empty((n, n_p))
        e_out = np.empty(n)
        e_err = np.empty(n)
        mb = np.empty(n)
        state = self.initial_state()
        t_lo, t_hi = cfg.T_init, cfg.T_init
        for k in range(n):
            flow = self.pressure.solve(S[:, k])
            step = step_heat(state, flow, self.props, cfg, wells.step_seconds, model=self.heat)
            state = step.state
            prod_T[k] = step.outlet_T
            prod_q[k] = flow.producer_rates
            e_out[k] = step.energy_out
            e_err[k] = step.energy_error
            mb[k] = flow.mass_balance
            tf = state.T_f[self.props.fracture]
            t_lo = min(t_lo, state.T_m.min(), tf.min() if tf.size else np.inf)
            t_hi = max(t_hi, state.T_m.max(), tf.max() if tf.size else -np.inf)
            if on_step is not None:
                on_step(k, state)
        days = np.full(n, wells.step_days)
        return SimulationSeries(days, np.cumsum(days), prod_T, prod_q, S.T.copy(), cfg.T_inj,
                                e_out, e_err, mb, float(t_lo), float(t_hi))


def simulate_schedule(schedule, scenario: Scenario, dfn: DfnSpec | None = None) -> SimulationSeries:
    return Reservoir(scenario, dfn).simulate(schedule)
