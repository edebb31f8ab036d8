"""Surrogate-assisted evolutionary multi-objective optimization."""
from .benchmarks import Benchmark, evaluate_benchmark, true_front
from .core import Archive, BoxBounds, RandomStream
from .metrics import default_reference_point, hypervolume, hv_improvement, igd
from .optimizer import AlemoConfig, RunTrace, alemo_run, nsga2_run
from .pareto import non_dominated_sort, select_top

__version__ = "0.1.0"

__all__ = [
    "AlemoConfig", "Archive", "Benchmark", "BoxBounds", "RandomStream", "RunTrace",
    "alemo_run", "default_reference_point", "evaluate_benchmark", "hv_improvement",
    "hypervolume", "igd", "non_dominated_sort", "nsga2_run", "select_top", "true_front",
]
