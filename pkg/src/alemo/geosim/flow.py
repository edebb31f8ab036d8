"""Steady incompressible Darcy flow by two-point flux approximation.

Unknowns are the pressure deviations from the producer bottom-hole
pressure, so a zero injection schedule yields an exactly zero field.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .config import ReservoirConfig, WellLayout
from .dfn import CellProperties


@dataclass(frozen=True)
class FlowSolution:
    p: np.ndarray  # Pa per cell
    flux_x: np.ndarray  # (ny, nx-1), m^3/s from cell (j, i) to (j, i+1)
    flux_y: np.ndarray  # (ny-1, nx), m^3/s from cell (j, i) to (j+1, i)
    producer_rates: np.ndarray  # m^3/s out of the reservoir, one per producer
    injector_rates: np.ndarray  # m^3/s into the reservoir
    producer_cells: np.ndarray
    injector_cells: np.ndarray

    @property
    def mass_balance(self) -> float:
        """|sum of signed well rates| / sum of their magnitudes (0 when idle)."""
        total = np.abs(self.injector_rates).sum() + np.abs(self.producer_rates).sum()
        if total == 0:
            return 0.0
        return abs(self.injector_rates.sum() - self.producer_rates.sum()) / total


def transmissibilities(props: CellProperties, cfg: ReservoirConfig):
    """Harmonic-mean face transmissibilities, m^3/(Pa s)."""
    mob = (props.k / cfg.mu_w).reshape(cfg.ny, cfg.nx)
    H = cfg.thickness
    tx = cfg.dy * H / (0.5 * cfg.dx / mob[:, :-1] + 0.5 * cfg.dx / mob[:, 1:])
    ty = cfg.dx * H / (0.5 * cfg.dy / mob[:-1, :] + 0.5 * cfg.dy / mob[1:, :])
    return tx, ty


def well_index(k, cfg: ReservoirConfig) -> float:
    """Peaceman index for a vertical well in a square cell."""
    r_o = 0.2 * cfg.dx
    return 2.0 * np.pi * k * cfg.thickness / (cfg.mu_w * np.log(r_o / cfg.well_radius))


class PressureSystem:
    """Factorized TPFA operator for a fixed grid, property set and well layout."""

    def __init__(self, props: CellProperties, cfg: ReservoirConfig, wells: WellLayout):
        self.cfg = cfg
        self.tx, self.ty = transmissibilities(props, cfg)
        self.prod_cells = np.array([cfg.cell_of(x, y) for x, y in wells.producers])
        self.inj_cells = np.array([cfg.cell_of(x, y) for x, y in wells.injectors])
        self.wi = np.array([well_index(props.k[c], cfg) for c in self.prod_cells])
        nx, ny = cfg.nx, cfg.ny
        n = nx * ny
        idx = np.arange(n).reshape(ny, nx)
        rows, cols, vals = [], [], []
        for a, b, t in ((idx[:, :-1], idx[:, 1:], self.tx), (idx[:-1, :], idx[1:, :], self.ty)):
            a, b, t = a.ravel(), b.ravel(), t.ravel()
            rows += [a, b, a, b]
            cols += [a, b, b, a]
            vals += [t, t, -t, -t]
        rows.append(self.prod_cells)
        cols.append(self.prod_cells)
        vals.append(self.wi)
        A = sp.csc_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
        self.A = A
        self.lu = splu(A)

    def solve(self, injector_rates) -> FlowSolution:
        cfg = self.cfg
        q = np.asarray(injector_rates, dtype=float)
        if q.shape != self.inj_cells.shape:
            raise ValueError(f"expected {len(self.inj_cells)} injector rates, got {q.shape}")
        b = np.zeros(cfg.n_cells)
        np.add.at(b, self.inj_cells, q)
        if np.any(b):
            dp = self.lu.solve(b)
            # one refinement pass tightens the discrete mass balance
            dp += self.lu.solve(b - self.A @ dp)
        else:
            dp = np.zeros(cfg.n_cells)
        P = dp.reshape(cfg.ny, cfg.nx)
        flux_x = self.tx * (P[:, :-1] - P[:, 1:])
        flux_y = self.ty * (P[:-1, :] - P[1:, :])
        prod = self.wi * dp[self.prod_cells]
        return FlowSolution(cfg.p_bhp + dp, flux_x, flux_y, prod, q.copy(), self.prod_cells, self.inj_cells)


def solve_pressure(props: CellProperties, wells: WellLayout, injector_rates, cfg: ReservoirConfig) -> FlowSolution:
    return PressureSystem(props, cfg, wells).solve(injector_rates)
