"""Statistical 2-D fracture networks and their projection onto the grid."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DfnParams, ReservoirConfig, WellLayout


@dataclass(frozen=True)
class DfnSpec:
    segments: np.ndarray  # (n, 4) rows of x0, y0, x1, y1 in metres
    aperture: float | None = None

    def __len__(self):
        return len(self.segments)

    @property
    def lengths(self) -> np.ndarray:
        s = self.segments
        return np.hypot(s[:, 2] - s[:, 0], s[:, 3] - s[:, 1])


@dataclass(frozen=True)
class CellProperties:
    k: np.ndarray  # permeability per cell, m^2
    phi: np.ndarray  # porosity of the flowing continuum
    fracture: np.ndarray  # bool tag
    frac_length: np.ndarray  # fracture trace length inside each cell, m

    @property
    def n_fracture(self) -> int:
        return int(self.fracture.sum())


def clip_segment(x0, y0, x1, y1, lx, ly):
    """Liang-Barsky clip to [0, lx] x [0, ly]; ``None`` if nothing is left."""
    dx, dy = x1 - x0, y1 - y0
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x0), (dx, lx - x0), (-dy, y0), (dy, ly - y0)):
        if p == 0:
            if q < 0:
                return None
            continue
        t = q / p
        if p < 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    if t1 - t0 <= 0:
        return None
    xa, xb = np.clip([x0 + t0 * dx, x0 + t1 * dx], 0.0, lx)
    ya, yb = np.clip([y0 + t0 * dy, y0 + t1 * dy], 0.0, ly)
    return (float(xa), float(ya), float(xb), float(yb))


def generate_dfn(params: DfnParams, lx: float, ly: float) -> DfnSpec:
    """Seeded network: uniform centres and lengths, two jittered orientation sets."""
    if params.segments is not None:
        raw = np.asarray(params.segments, dtype=float).reshape(-1, 4)
    else:
        rng = np.random.default_rng(params.seed)
        n = params.count
        lo, hi = params.length_range
        cx = rng.uniform(0, lx, n)
        cy = rng.uniform(0, ly, n)
        length = rng.uniform(lo, hi, n)
        which = rng.integers(0, len(params.orientations_deg), n)
        angle = np.deg2rad(np.asarray(params.orientations_deg)[which] + rng.normal(0.0, params.jitter_deg, n))
        hx = 0.5 * length * np.cos(angle)
        hy = 0.5 * length * np.sin(angle)
        raw = np.column_stack([cx - hx, cy - hy, cx + hx, cy + hy])
    kept = [c for c in (clip_segment(*row, lx, ly) for row in raw) if c is not None]
    segs = np.asarray(kept, dtype=float).reshape(-1, 4)
    return DfnSpec(segs, params.aperture)


def rasterize_dfn(dfn: DfnSpec, cfg: ReservoirConfig, wells: WellLayout | None = None) -> CellProperties:
    """Equivalent-continuum cell properties.

    Each segment is cut into pieces no longer than a quarter cell and each
    piece's length is credited to the cell holding its midpoint. Cells with
    any fracture length, and well cells when ``wells`` is given, take the
    fracture permeability (cubic law if the network has an aperture) and
    porosity.
    """
    n = cfg.n_cells
    frac_len = np.zeros(n)
    step = 0.25 * min(cfg.dx, cfg.dy)
    for x0, y0, x1, y1 in dfn.segments:
        L = np.hypot(x1 - x0, y1 - y0)
        pieces = max(int(np.ceil(L / step)), 1)
        t = (np.arange(pieces) + 0.5) / pieces
        xs = x0 + t * (x1 - x0)
        ys = y0 + t * (y1 - y0)
        i = np.clip(np.floor(xs / cfg.dx).astype(int), 0, cfg.nx - 1)
        j = np.clip(np.floor(ys / cfg.dy).astype(int), 0, cfg.ny - 1)
        np.add.at(frac_len, j * cfg.nx + i, L / pieces)
    tagged = frac_len > 0
    if wells is not None:
        for x, y in wells.producers + wells.injectors:
            c = cfg.cell_of(x, y)
            if not tagged[c]:
                # stimulated zone: one cell-width of virtual fracture
                tagged[c] = True
                frac_len[c] = cfg.dx
    k_frac = dfn.aperture**2 / 12.0 if dfn.aperture is not None else cfg.k_fracture
    k = np.where(tagged, k_frac, cfg.k_matrix)
    phi = np.where(tagged, cfg.phi_fracture, cfg.phi_matrix)
    return CellProperties(k, phi, tagged, frac_len)
