"""Hypervolume-driven search inside the box spanned by the current elite."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .core import BoxBounds, as_generator
from .metrics import hv_improvements
from .pareto import non_dominated_sort, nondominated_mask, select_top
from .surrogate import RbfModel, rbf_fit
from .variation import VariationParams, binomial_crossover, de_best_mutation, polynomial_mutation

DEGENERATE_WIDEN = 1e-6
DUPLICATE_TOL = 1e-9


@dataclass(frozen=True)
class AttentionSubspace:
    box: BoxBounds
    members: np.ndarray  # archive rows of the tau promising solutions
    tau: int


def identify_subspace(X, F, tau: int, bounds: BoxBounds) -> AttentionSubspace:
    """Box spanned by the ``tau`` best archive members (rank, then crowding)."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if len(X) < tau:
        raise ValueError(f"archive holds {len(X)} samples, fewer than tau={tau}")
    ranked = non_dominated_sort(F)
    members = np.sort(select_top(ranked, tau))
    lo = np.maximum(X[members].min(axis=0), bounds.lb)
    hi = np.minimum(X[members].max(axis=0), bounds.ub)
    flat = hi - lo < DEGENERATE_WIDEN * bounds.span
    if np.any(flat):
        width = DEGENERATE_WIDEN * bounds.span
        # centred on the collapsed value, shifted inward at a bound
        start = np.clip(0.5 * (lo + hi) - 0.5 * width, bounds.lb, bounds.ub - width)
        lo = np.where(flat, start, lo)
        hi = np.where(flat, start + width, hi)
    return AttentionSubspace(BoxBounds(lo, hi), members, tau)


def training_rows(X, sub: AttentionSubspace, inflate: float = 0.1) -> np.ndarray:
    """Archive rows inside the subspace inflated by ``inflate`` of its span.

    Falls back to the promising members when fewer than d + 1 rows qualify.
    """
    X = np.atleast_2d(X)
    pad = inflate * sub.box.span
    inside = np.all((X >= sub.box.lb - pad) & (X <= sub.box.ub + pad), axis=1)
    rows = np.flatnonzero(inside)
    if len(rows) < X.shape[1] + 1:
        rows = sub.members
    return rows


def fit_surrogates(X, F, sub: AttentionSubspace, inflate: float = 0.1) -> list[RbfModel]:
    rows = training_rows(X, sub, inflate)
    return [rbf_fit(X[rows], F[rows, k], sub.box) for k in range(F.shape[1])]


def predict_all(models, X) -> np.ndarray:
    return np.column_stack([mdl.predict(X) for mdl in models])


def surrogate_pareto_search(models, box: BoxBounds, generations: int, stream,
                            params: VariationParams = VariationParams(),
                            initial=None, pop_size: int = 50):
    """NSGA-II style loop driven only by surrogate predictions.

    The population starts from ``initial`` (clipped into ``box``) topped up
    with uniform samples. Offspring use best/1 DE mutation with a random
    first-front member as base, binomial crossover and polynomial
    mutation. Returns the final non-dominated decision vectors and their
    predicted objectives.
    """
    rng = as_generator(stream)
    d = box.d
    if initial is None:
        P = box.denormalize(rng.random((pop_size, d)))
    else:
        P = np.clip(np.atleast_2d(np.asarray(initial, dtype=float)), box.lb, box.ub)
        if len(P) < pop_size:
            P = np.vstack([P, box.denormalize(rng.random((pop_size - len(P), d)))])
    n = len(P)
    FP = predict_all(models, P)
    pm = params.mutation_probability(d)
    for _ in range(generations):
        ranked = non_dominated_sort(FP)
        best = np.flatnonzero(ranked.rank == 1)
        base = P[rng.choice(best, size=n)]
        r1 = rng.integers(0, n, size=n)
        r2 = (r1 + rng.integers(1, n, size=n)) % n
        V = de_best_mutation(base, P[r1], P[r2], params.Mu)
        U = np.clip(binomial_crossover(P, V, params.CR, rng), box.lb, box.ub)
        U = polynomial_mutation(U, box, params.eta_m, pm, rng)
        FU = predict_all(models, U)
        allX = np.vstack([P, U])
        allF = np.vstack([FP, FU])
        keep = select_top(non_dominated_sort(allF), n)
        P, FP = allX[keep], allF[keep]
    mask = nondominated_mask(FP)
    return P[mask], FP[mask]


def select_hv_infill(cand_X, cand_F, archive_X, archive_front, z, bounds: BoxBounds) -> np.ndarray:
    """Candidate whose predicted objectives add the most hypervolume.

    Candidates within ``DUPLICATE_TOL`` (normalized) of an archived vector
    are dropped first. Ties, including the all-zero case, go to the
    candidate farthest from the archive; if every candidate is a
    duplicate the farthest one is returned.
    """
    cand_X = np.atleast_2d(cand_X)
    cand_F = np.atleast_2d(cand_F)
    if len(cand_X) == 0:
        raise ValueError("no infill candidates")
    dist = cdist(bounds.normalize(cand_X), bounds.normalize(archive_X)).min(axis=1) if len(archive_X) else np.full(len(cand_X), np.inf)
    fresh = np.flatnonzero(dist > DUPLICATE_TOL)
    if len(fresh) == 0:
        return cand_X[int(np.argmax(dist))].copy()
    gains = hv_improvements(archive_front, cand_F[fresh], z)
    best = np.flatnonzero(gains == gains.max())
    pick = best[np.argmax(dist[fresh][best])]
    return cand_X[fresh[pick]].copy()
