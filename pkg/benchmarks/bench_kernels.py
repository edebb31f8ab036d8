"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from alemo import kernels


def cases(rng):
    yield "nd_ranks n=200 m=2", "nd_ranks", (rng.random((200, 2)),)
    yield "nd_ranks n=500 m=3", "nd_ranks", (rng.random((500, 3)),)
    for n in (100, 1000):
        t = np.sort(rng.random(n))
        front = np.column_stack([t, 1 - np.sqrt(t)])
        yield f"hv2d n={n}", "hv2d", (front, np.array([1.1, 1.1]))
    for n in (100, 400):
        P = rng.normal(size=(n, 3))
        P = np.abs(P / np.linalg.norm(P, axis=1, keepdims=True))
        yield f"hv3d n={n}", "hv3d", (P, np.full(3, 1.1))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        kernels.get_backend("cython")
    except ImportError:
        print("compiled backend not built; only the python fallback is available")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'case':<22}{'python ms':>12}{'cython ms':>12}{'speed-up':>10}")
    for name, fn, a in cases(rng):
        f = getattr(kernels, fn)
        res = {}
        for be in ("python", "cython"):
            number = 3
            best = min(timeit.repeat(lambda: f(*a, backend=be), number=number, repeat=args.repeat)) / number
            res[be] = best * 1e3
        ref, got = f(*a, backend="python"), f(*a, backend="cython")
        assert np.allclose(ref, got, rtol=1e-12, atol=0), name
        print(f"{name:<22}{res['python']:>12.3f}{res['cython']:>12.3f}{res['python'] / res['cython']:>10.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
