import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from alemo import kernels

from conftest import BACKENDS


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree(rng):
    for _ in range(30):
        n = int(rng.integers(1, 150))
        F = rng.integers(0, 10, size=(n, 3)).astype(float)
        assert np.array_equal(kernels.nd_ranks(F, "python"), kernels.nd_ranks(F, "cython"))
        P = rng.random((n, 2))
        assert kernels.hv2d(P, [1, 1], "python") == pytest.approx(kernels.hv2d(P, [1, 1], "cython"), rel=1e-13)
        P = rng.random((n, 3))
        assert kernels.hv3d(P, [1, 1, 1], "python") == pytest.approx(kernels.hv3d(P, [1, 1, 1], "cython"), rel=1e-13)


def test_readonly_inputs_accepted(backend):
    F = np.random.default_rng(0).random((10, 2))
    F.flags.writeable = False
    assert kernels.nd_ranks(F, backend).shape == (10,)
    assert kernels.hv2d(F, np.array([1.0, 1.0]), backend) > 0


def test_env_forces_python_backend():
    code = "import alemo.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, ALEMO_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
