"""Reservoir, well and economic configuration plus the JSON scenario loader.

All quantities are SI (m, s, Pa, K, J, W) once loaded. The scenario file
accepts times in days; they are converted here and nowhere else.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

import numpy as np

DAY = 86400.0


@dataclass(frozen=True)
class ReservoirConfig:
    h: float  # matrix-fracture heat transfer coefficient, W/(m^2 K); no default on purpose
    lx: float = 2000.0
    ly: float = 2000.0
    nx: int = 20
    ny: int = 20
    thickness: float = 40.0
    phi_matrix: float = 0.01
    phi_fracture: float = 0.1
    k_matrix: float = 5e-15
    k_fracture: float = 1e-7
    T_init: float = 473.15
    p_init: float = 30e6
    T_inj: float = 293.15
    p_bhp: float = 30e6
    rho_w: float = 1000.0
    mu_w: float = 3e-4
    c_w: float = 4200.0
    lambda_w: float = 0.698
    rho_s: float = 2700.0
    c_s: float = 850.0
    lambda_s: float = 2.0
    well_radius: float = 0.1
    substeps: int = 20

    def __post_init__(self):
        if self.nx < 10 or self.ny < 10:
            raise ValueError("grid must be at least 10 x 10")
        if self.substeps < 1:
            raise ValueError("substeps must be >= 1")
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name not in ("nx", "ny", "substeps") and not (np.isfinite(v) and v > 0):
                raise ValueError(f"{f.name} must be a positive finite number, got {v}")
        if self.T_inj >= self.T_init:
            raise ValueError("injection temperature must be below the initial temperature")

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dy(self) -> float:
        return self.ly / self.ny

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    @property
    def cell_volume(self) -> float:
        return self.dx * self.dy * self.thickness

    @property
    def rho_c_w(self) -> float:
        return self.rho_w * self.c_w

    def cell_of(self, x: float, y: float) -> int:
        """Flat index (row-major in y, then x) of the cell holding point (x, y)."""
        i = min(max(int(np.floor(x / self.dx)), 0), self.nx - 1)
        j = min(max(int(np.floor(y / self.dy)), 0), self.ny - 1)
        return j * self.nx + i


@dataclass(frozen=True)
class WellLayout:
    producers: tuple  # ((x, y), ...) in metres
    injectors: tuple
    max_rate: float = 0.4  # m^3/s per injector
    step_days: float = 600.0
    n_steps: int = 20

    def __post_init__(self):
        if not self.producers:
            raise ValueError("at least one pressure-controlled producer is required")
        if not self.injectors:
            raise ValueError("at least one injector is required")
        if self.max_rate <= 0 or self.step_days <= 0 or self.n_steps < 1:
            raise ValueError("max_rate, step_days and n_steps must be positive")

    @property
    def n_injectors(self) -> int:
        return len(self.injectors)

    @property
    def step_seconds(self) -> float:
        return self.step_days * DAY

    @property
    def horizon_days(self) -> float:
        return self.step_days * self.n_steps


def nine_spot(lx=2000.0, ly=2000.0, inset=150.0) -> WellLayout:
    """Producers at the corners and centre, injectors at the edge midpoints."""
    cx, cy = 0.5 * lx, 0.5 * ly
    producers = ((inset, inset), (lx - inset, inset), (inset, ly - inset), (lx - inset, ly - inset), (cx, cy))
    injectors = ((cx, inset), (inset, cy), (lx - inset, cy), (cx, ly - inset))
    return WellLayout(producers, injectors)


@dataclass(frozen=True)
class EconomicParams:
    r_e: float  # currency per Wh of produced thermal energy
    r_i: float  # currency per m^3 injected
    r_p: float  # currency per m^3 produced
    gamma: float  # discount rate per year
    short_window_days: tuple = (0.0, 3000.0)
    discount: str = "cumulative"  # or "step" for the per-step exponent

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("discount rate must be non-negative")
        if self.discount not in ("cumulative", "step"):
            raise ValueError("discount must be 'cumulative' or 'step'")
        a, b = self.short_window_days
        if not 0 <= a <= b:
            raise ValueError("short window must satisfy 0 <= start <= end")


@dataclass(frozen=True)
class DfnParams:
    seed: int = 7
    count: int = 40
    length_range: tuple = (200.0, 800.0)
    orientations_deg: tuple = (30.0, 120.0)
    jitter_deg: float = 5.0
    aperture: float | None = None  # if set, fracture permeability = b^2 / 12
    segments: tuple | None = None  # explicit ((x0, y0, x1, y1), ...) overrides generation
    stimulate_wells: bool = True


@dataclass(frozen=True)
class Scenario:
    reservoir: ReservoirConfig
    wells: WellLayout
    economics: EconomicParams
    dfn: DfnParams = field(default_factory=DfnParams)

    def check(self):
        for x, y in self.wells.producers + self.wells.injectors:
            if not (0 <= x <= self.reservoir.lx and 0 <= y <= self.reservoir.ly):
                raise ValueError(f"well at ({x}, {y}) lies outside the reservoir")
        if self.economics.short_window_days[1] > self.wells.horizon_days:
            raise ValueError("short window extends past the project horizon")
        return self


def _pairs(rows):
    return tuple(tuple(float(v) for v in r) for r in rows)


def scenario_from_dict(data: dict) -> Scenario:
    try:
        res = ReservoirConfig(**data["reservoir"])
        w = data["wells"]
        wells = WellLayout(
            producers=_pairs(w["producers"]),
            injectors=_pairs(w["injectors"]),
            max_rate=float(w.get("max_rate", 0.4)),
            step_days=float(w.get("step_days", 600.0)),
            n_steps=int(w.get("n_steps", 20)),
        )
        e = dict(data["economics"])
        if "short_window_days" in e:
            e["short_window_days"] = tuple(float(v) for v in e["short_window_days"])
        econ = EconomicParams(**e)
        d = dict(data.get("dfn", {}))
        for key in ("length_range", "orientations_deg"):
            if key in d:
                d[key] = tuple(float(v) for v in d[key])
        if d.get("segments") is not None:
            d["segments"] = _pairs(d["segments"])
        dfn = DfnParams(**d)
    except KeyError as exc:
        raise ValueError(f"scenario is missing required key {exc}") from None
    except TypeError as exc:
        raise ValueError(f"bad scenario entry: {exc}") from None
    return Scenario(res, wells, econ, dfn).check()


def load_scenario(path=None) -> Scenario:
    """Read a scenario JSON file; ``None`` loads the bundled default."""
    if path is None:
        text = resources.files("alemo.data").joinpath("egs_2km.json").read_text()
    else:
        text = Path(path).read_text()
    return scenario_from_dict(json.loads(text))
