"""Build the optional Cython kernels.

The package works without them: ``alemo.kernels`` falls back to the
numpy implementations in ``alemo._kernels_py`` when the extension is
missing or ``ALEMO_PURE_PYTHON=1`` is set.
"""
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ALEMO_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "alemo._kernels",
                    ["src/alemo/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
