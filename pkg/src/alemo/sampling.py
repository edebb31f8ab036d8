"""Latin hypercube design for archive initialization."""
import numpy as np

from .core import BoxBounds, as_generator


def latin_hypercube(n: int, bounds: BoxBounds, stream) -> np.ndarray:
    """``n`` points with exactly one point per stratum in every dimension.

    Each dimension gets an independent permutation of the ``n`` equal-width
    strata; the position inside a stratum is uniform.
    """
    if n < 1:
        raise ValueError("latin_hypercube needs n >= 1")
    rng = as_generator(stream)
    d = bounds.d
    U = np.empty((n, d))
    for j in range(d):
        U[:, j] = (rng.permutation(n) + rng.random(n)) / n
    return bounds.denormalize(U)


def default_initial_size(d: int) -> int:
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return 100 if d < 100 else 200
