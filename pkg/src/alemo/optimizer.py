"""ALEMO outer loop and the NSGA-II baseline.

Both optimizers consume a fixed budget of true evaluations and return a
:class:`RunTrace` holding every evaluated sample in order.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from .classifier import C_I, C_II, PnnClassifier, label_archive
from .core import Archive, BoxBounds, Problem, RandomStream, clamp_to_bounds
from .metrics import default_reference_point, hypervolume, igd
from .pareto import non_dominated_sort, nondominated_mask, select_top, update_front
from .sampling import default_initial_size, latin_hypercube
from .subspace import fit_surrogates, identify_subspace, select_hv_infill, surrogate_pareto_search
from .variation import VariationParams, binomial_crossover, polynomial_mutation, rank_based_mutation

log = logging.getLogger(__name__)

DUPLICATE_G = 1e-12


@dataclass(frozen=True)
class AlemoConfig:
    NP: int = 50
    budget: int = 300
    variation: VariationParams = field(default_factory=VariationParams)
    tau: int = 50
    offspring_pool: int = 50
    inner_generations: int = 50
    inner_pop: int = 50
    label_criterion: str = "rank"
    pnn_sigma_scale: float = 0.1
    subspace_inflate: float = 0.1
    n_init: int | None = None
    seed: int = 0


@dataclass
class RunTrace:
    """Every true evaluation of one run, in order.

    ``phase[i]`` is "init", "explore", "exploit" (ALEMO) or "init",
    "offspring" (NSGA-II).
    """

    algorithm: str
    X: np.ndarray
    F: np.ndarray
    phase: list[str]
    seed: int

    def __len__(self):
        return len(self.F)

    @property
    def eval_index(self) -> np.ndarray:
        return np.arange(len(self.F))

    @property
    def final_front(self) -> np.ndarray:
        """Archive rows on the first non-dominated front."""
        return np.flatnonzero(nondominated_mask(self.F))

    def convergence(self, z, reference=None):
        """HV (and IGD when ``reference`` is given) of the cumulative front after each evaluation."""
        hv = np.empty(len(self.F))
        ig = np.full(len(self.F), np.nan)
        front = np.empty((0, self.F.shape[1]))
        last_hv = 0.0
        last_igd = np.nan
        for i, f in enumerate(self.F):
            new = update_front(front, f)
            if new is not front:
                front = new
                last_hv = hypervolume(front, z)
                if reference is not None:
                    last_igd = igd(reference, front)
            hv[i] = last_hv
            ig[i] = last_igd
        return hv, ig


def _evaluate(problem: Problem, archive: Archive, phases: list, x, phase: str):
    f = problem.evaluate(x)
    archive.append(x, f)
    phases.append(phase)


def select_uncertain_offspring(offspring, model: PnnClassifier, archive_X, bounds: BoxBounds) -> int:
    """Row of the offspring to evaluate.

    Among offspring predicted C-I, take the one farthest (normalized
    Euclidean) from every archived sample; fall back to C-II, then to all
    offspring. Offspring that duplicate an archived sample are only
    chosen when nothing else is left.
    """
    U = np.atleast_2d(offspring)
    g = cdist(bounds.normalize(U), bounds.normalize(archive_X)).min(axis=1)
    labels = model.predict(U)
    fresh = g > DUPLICATE_G
    for pool in (fresh & (labels == C_I), fresh & (labels == C_II), fresh, np.ones(len(U), bool)):
        cand = np.flatnonzero(pool)
        if len(cand):
            return int(cand[np.argmax(g[cand])])
    raise ValueError("no offspring to select from")


def generate_offspring(Xp, labeled, cfg: AlemoConfig, bounds: BoxBounds, rng) -> np.ndarray:
    """Rank-based mutation, binomial crossover and polynomial mutation."""
    n = len(Xp)
    K = cfg.offspring_pool
    top = labeled.members(C_I)
    ref = labeled.members(C_II)
    r1 = rng.choice(top, size=K)
    if len(ref):
        r2 = rng.choice(ref, size=K)
    else:
        rest = np.setdiff1d(np.arange(n), top)
        if len(rest):
            r2 = rng.choice(rest, size=K)
        else:
            r2 = (r1 + rng.integers(1, n, size=K)) % n if n > 1 else r1
    V = rank_based_mutation(Xp[r1], Xp[r2], cfg.variation.Mu)
    targets = Xp[np.arange(K) % n]
    U = clamp_to_bounds(binomial_crossover(targets, V, cfg.variation.CR, rng), bounds)
    U = polynomial_mutation(U, bounds, cfg.variation.eta_m, cfg.variation.mutation_probability(bounds.d), rng)
    return clamp_to_bounds(U, bounds)


def explore_candidate(archive: Archive, cfg: AlemoConfig, bounds: BoxBounds, rng) -> np.ndarray:
    X, F = archive.X, archive.F
    pop = select_top(non_dominated_sort(F), min(cfg.NP, len(F)))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        labeled = label_archive(X[pop], F[pop], cfg.label_criterion)
    model = PnnClassifier(bounds, sigma_scale=cfg.pnn_sigma_scale).fit(labeled)
    U = generate_offspring(X[pop], labeled, cfg, bounds, rng)
    return U[select_uncertain_offspring(U, model, X, bounds)]


def exploit_candidate(archive: Archive, cfg: AlemoConfig, bounds: BoxBounds, rng) -> np.ndarray:
    X, F = archive.X, archive.F
    sub = identify_subspace(X, F, min(cfg.tau, len(F)), bounds)
    models = fit_surrogates(X, F, sub, cfg.subspace_inflate)
    cand_X, cand_F = surrogate_pareto_search(
        models, sub.box, cfg.inner_generations, rng, cfg.variation,
        initial=X[sub.members], pop_size=cfg.inner_pop,
    )
    front = F[nondominated_mask(F)]
    z = default_reference_point(front)
    return select_hv_infill(cand_X, cand_F, X, front, z, bounds)


def alemo_run(problem: Problem, cfg: AlemoConfig = AlemoConfig()) -> RunTrace:
    bounds = problem.bounds
    n0 = cfg.n_init if cfg.n_init is not None else default_initial_size(problem.d)
    if cfg.budget < n0:
        raise ValueError(f"budget {cfg.budget} is below the initial design size {n0}")
    if cfg.NP > n0:
        raise ValueError(f"NP={cfg.NP} exceeds the initial design size {n0}")
    stream = RandomStream(cfg.seed)
    rng = stream.child(1).generator()
    archive = Archive(problem.d, problem.m, capacity=cfg.budget)
    phases: list[str] = []
    for x in latin_hypercube(n0, bounds, stream.child(0)):
        _evaluate(problem, archive, phases, x, "init")
    while len(archive) < cfg.budget:
        _evaluate(problem, archive, phases, explore_candidate(archive, cfg, bounds, rng), "explore")
        if len(archive) >= cfg.budget:
            break
        _evaluate(problem, archive, phases, exploit_candidate(archive, cfg, bounds, rng), "exploit")
    log.debug("alemo finished: %d evaluations", len(archive))
    return RunTrace("alemo", archive.X.copy(), archive.F.copy(), phases, cfg.seed)


def _tournament(ranked, rng, k):
    a = rng.integers(0, len(ranked), size=k)
    b = rng.integers(0, len(ranked), size=k)
    ra, rb = ranked.rank[a], ranked.rank[b]
    ca, cb = ranked.crowding[a], ranked.crowding[b]
    a_wins = (ra < rb) | ((ra == rb) & (ca >= cb))
    return np.where(a_wins, a, b)


def nsga2_run(problem: Problem, NP: int = 50, budget: int = 300,
              params: VariationParams = VariationParams(), seed: int = 0) -> RunTrace:
    """Generational NSGA-II with binary tournaments and (mu + lambda) survival."""
    if budget < NP:
        raise ValueError("budget must be at least NP")
    bounds = problem.bounds
    stream = RandomStream(seed)
    rng = stream.child(1).generator()
    archive = Archive(problem.d, problem.m, capacity=budget)
    phases: list[str] = []
    for x in latin_hypercube(NP, bounds, stream.child(0)):
        _evaluate(problem, archive, phases, x, "init")
    pop = np.arange(NP)
    pm = params.mutation_probability(problem.d)
    while len(archive) < budget:
        X, F = archive.X, archive.F
        ranked = non_dominated_sort(F[pop], index=pop)
        p1 = pop[_tournament(ranked, rng, NP)]
        p2 = pop[_tournament(ranked, rng, NP)]
        U = clamp_to_bounds(binomial_crossover(X[p1], X[p2], params.CR, rng), bounds)
        U = polynomial_mutation(U, bounds, params.eta_m, pm, rng)
        start = len(archive)
        for u in U[: budget - start]:
            _evaluate(problem, archive, phases, u, "offspring")
        union = np.concatenate([pop, np.arange(start, len(archive))])
        ranked = non_dominated_sort(archive.F[union], index=union)
        pop = union[select_top(ranked, NP)]
    return RunTrace("nsga2", archive.X.copy(), archive.F.copy(), phases, seed)
