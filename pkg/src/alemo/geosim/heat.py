"""Dual-continuum heat transport on the rasterized grid.

Every cell carries a matrix temperature. Fracture-tagged cells also carry
a fracture temperature; that continuum is the one the fluid flows through
in those cells, while in untagged cells the fluid flows through the
matrix pores. The two continua of a tagged cell exchange heat at rate
h * A * (T_f - T_m) with A twice the fracture trace length times the
thickness. Conduction acts between neighbouring matrix nodes; the outer
boundary is insulated.

Advection is upwind and, like exchange and conduction, treated
implicitly, so each sub-step solves an M-matrix system: temperatures
cannot leave [T_inj, T_init] and the energy audit closes to round-off.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .config import ReservoirConfig
from .dfn import CellProperties
from .flow import FlowSolution


@dataclass(frozen=True)
class ReservoirState:
    p: np.ndarray  # Pa per cell
    T_m: np.ndarray  # K per cell
    T_f: np.ndarray  # K per cell, NaN where the cell carries no fracture continuum
    time_days: float


@dataclass(frozen=True)
class HeatStep:
    state: ReservoirState
    outlet_T: np.ndarray  # step-averaged producer temperatures, K
    energy_out: float  # J produced above the injection temperature
    energy_error: float  # relative audit error over the step


class HeatModel:
    """Node bookkeeping and the rate-independent operators."""

    def __init__(self, props: CellProperties, cfg: ReservoirConfig):
        self.cfg = cfg
        n = cfg.n_cells
        self.n = n
        frac_cells = np.flatnonzero(props.fracture)
        self.frac_cells = frac_cells
        self.n_nodes = n + len(frac_cells)
        # flowing node of every cell
        self.flow_node = np.arange(n)
        self.flow_node[frac_cells] = n + np.arange(len(frac_cells))

        V = cfg.cell_volume
        rc_m = cfg.phi_matrix * cfg.rho_c_w + (1 - cfg.phi_matrix) * cfg.rho_s * cfg.c_s
        cap = np.empty(self.n_nodes)
        cap[:n] = V * rc_m
        cap[frac_cells] *= 1 - cfg.phi_fracture
        cap[n:] = V * cfg.phi_fracture * cfg.rho_c_w
        self.capacity = cap

        # static edges: (a, b, conductance) for exchange and matrix conduction
        G_ex = cfg.h * 2.0 * props.frac_length[frac_cells] * cfg.thickness
        lam = cfg.phi_matrix * cfg.lambda_w + (1 - cfg.phi_matrix) * cfg.lambda_s
        idx = np.arange(n).reshape(cfg.ny, cfg.nx)
        gx = lam * cfg.dy * cfg.thickness / cfg.dx
        gy = lam * cfg.dx * cfg.thickness / cfg.dy
        a = [frac_cells, idx[:, :-1].ravel(), idx[:-1, :].ravel()]
        b = [n + np.arange(len(frac_cells)), idx[:, 1:].ravel(), idx[1:, :].ravel()]
        g = [G_ex, np.full(a[1].size, gx), np.full(a[2].size, gy)]
        self.diff_a = np.concatenate(a)
        self.diff_b = np.concatenate(b)
        self.diff_g = np.concatenate(g)

    def initial_nodes(self) -> np.ndarray:
        return np.full(self.n_nodes, self.cfg.T_init)

    def split(self, T):
        T_m = T[: self.n].copy()
        T_f = np.full(self.n, np.nan)
        T_f[self.frac_cells] = T[self.n:]
        return T_m, T_f

    def advection_edges(self, flow: FlowSolution):
        """Upstream node, downstream node and positive volumetric rate per face."""
        cfg = self.cfg
        idx = np.arange(self.n).reshape(cfg.ny, cfg.nx)
        a = np.concatenate([idx[:, :-1].ravel(), idx[:-1, :].ravel()])
        b = np.concatenate([idx[:, 1:].ravel(), idx[1:, :].ravel()])
        q = np.concatenate([flow.flux_x.ravel(), flow.flux_y.ravel()])
        up = np.where(q > 0, a, b)
        down = np.where(q > 0, b, a)
        keep = q != 0
        return self.flow_node[up[keep]], self.flow_node[down[keep]], np.abs(q[keep])

    def operator(self, flow: FlowSolution):
        """Sparse rate operator K (W/K) and the injection node rates (W/K)."""
        rc = self.cfg.rho_c_w
        up, down, q = self.advection_edges(flow)
        inj_nodes = self.flow_node[flow.injector_cells]
        inj_w = rc * flow.injector_rates
        a, b, g = self.diff_a, self.diff_b, self.diff_g
        rows = np.concatenate([down, down, a, b, a, b, inj_nodes])
        cols = np.concatenate([down, up, a, b, b, a, inj_nodes])
        vals = np.concatenate([rc * q, -rc * q, g, g, -g, -g, inj_w])
        K = sp.csc_matrix((vals, (rows, cols)), shape=(self.n_nodes, self.n_nodes))
        return K, (up, down, rc * q), (inj_nodes, inj_w)

    def rate(self, T, adv, inj):
        """dE/dt per node evaluated edge by edge (exactly zero at equilibrium)."""
        up, down, w = adv
        r = np.zeros(self.n_nodes)
        np.add.at(r, down, w * (T[up] - T[down]))
        a, b, g = self.diff_a, self.diff_b, self.diff_g
        flux = g * (T[a] - T[b])
        np.add.at(r, a, -flux)
        np.add.at(r, b, flux)
        nodes, wi = inj
        np.add.at(r, nodes, wi * (self.cfg.T_inj - T[nodes]))
        return r

    def advance(self, T, flow: FlowSolution, seconds: float):
        """Backward-Euler sub-steps over ``seconds``; returns new nodes and step diagnostics."""
        cfg = self.cfg
        K, adv, inj = self.operator(flow)
        dt = seconds / cfg.substeps
        Cdt = self.capacity / dt
        lu = splu((sp.diags(Cdt) + K).tocsc())
        prod_nodes = self.flow_node[flow.producer_cells]
        prod_w = cfg.rho_c_w * flow.producer_rates
        T0 = T
        outlet = np.zeros(len(prod_nodes))
        e_out = 0.0
        for _ in range(cfg.substeps):
            T = T + lu.solve(self.rate(T, adv, inj))
            outlet += T[prod_nodes] - T0[prod_nodes]
            e_out += dt * float(np.sum(prod_w * (T[prod_nodes] - cfg.T_inj)))
        if not np.all(np.isfinite(T)):
            bad = np.flatnonzero(~np.isfinite(T))
            raise FloatingPointError(f"non-finite temperatures at nodes {bad[:10].tolist()}")
        # averaged as a drift from the start so an idle well reports its exact temperature
        outlet = T0[prod_nodes] + outlet / cfg.substeps
        dE = float(np.sum(self.capacity * (T - T0)))
        scale = max(abs(dE), e_out)
        err = abs(dE + e_out) / scale if scale > 0 else 0.0
        return T, outlet, e_out, err


def step_heat(state: ReservoirState, flow: FlowSolution, props: CellProperties,
              cfg: ReservoirConfig, dt: float, model: HeatModel | None = None) -> HeatStep:
    """Advance both temperature fields by ``dt`` seconds under a fixed flow field."""
    model = model or HeatModel(props, cfg)
    T = np.empty(model.n_nodes)
    T[: model.n] = state.T_m
    T[model.n:] = state.T_f[model.frac_cells]
    T, outlet, e_out, err = model.advance(T, flow, dt)
    T_m, T_f = model.split(T)
    new = ReservoirState(flow.p.copy(), T_m, T_f, state.time_days + dt / 86400.0)
    return HeatStep(new, outlet, e_out, err)
