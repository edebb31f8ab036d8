"""Cell-centred field snapshots as CSV for external plotting."""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .config import ReservoirConfig
from .heat import ReservoirState


def snapshot_table(state: ReservoirState, cfg: ReservoirConfig) -> np.ndarray:
    j, i = np.divmod(np.arange(cfg.n_cells), cfg.nx)
    x = (i + 0.5) * cfg.dx
    y = (j + 0.5) * cfg.dy
    return np.column_stack([i, j, x, y, state.p, state.T_m, state.T_f])


def export_snapshot(state: ReservoirState, cfg: ReservoirConfig, path) -> Path:
    """Write one row per cell: i, j, x, y, p, T_m, T_f (T_f is nan off the fracture continuum)."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    header = f"time_days={state.time_days:.17g} nx={cfg.nx} ny={cfg.ny}\ni,j,x,y,p,T_m,T_f"
    np.savetxt(tmp, snapshot_table(state, cfg), delimiter=",", header=header,
               fmt=["%d", "%d", "%.17g", "%.17g", "%.17g", "%.17g", "%.17g"])
    os.replace(tmp, path)
    return path


def read_snapshot(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", comments="#")
