"""Discounted cash flow of a simulated schedule."""
from __future__ import annotations

import numpy as np

from .config import DAY, EconomicParams
from .simulate import SimulationSeries


def tepr(series: SimulationSeries, rho_c_w: float) -> np.ndarray:
    """Thermal energy production rate per step, W."""
    dT = series.producer_T - series.T_inj
    return rho_c_w * np.sum(series.producer_rates * dT, axis=1)


def step_cashflows(series: SimulationSeries, econ: EconomicParams, rho_c_w: float) -> np.ndarray:
    """Undiscounted cash per step: thermal revenue minus water handling."""
    days = series.step_days
    revenue = days * 24.0 * tepr(series, rho_c_w) * econ.r_e
    wir = series.injector_rates.sum(axis=1)
    wpr = series.producer_rates.sum(axis=1)
    cost = days * DAY * (wir * econ.r_i + wpr * econ.r_p)
    return revenue - cost


def discount_factors(series: SimulationSeries, econ: EconomicParams) -> np.ndarray:
    t = series.end_days if econ.discount == "cumulative" else series.step_days
    return (1.0 + econ.gamma) ** (t / 365.0)


def npv(series: SimulationSeries, econ: EconomicParams, rho_c_w: float, window=None) -> float:
    """NPV over the steps lying inside ``window`` (start_day, end_day); default is the full horizon."""
    start = series.end_days - series.step_days
    if window is None:
        inside = np.ones(series.n_steps, bool)
    else:
        lo, hi = window
        inside = (start >= lo) & (series.end_days <= hi)
    if not inside.any():
        return 0.0
    cash = step_cashflows(series, econ, rho_c_w)[inside]
    return float(np.sum(cash / discount_factors(series, econ)[inside]))
