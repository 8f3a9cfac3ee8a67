"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so compilation failures are not fatal for installation from
source on exotic toolchains; delete the ext_modules block to skip.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qstarlike._kernels._core",
                ["src/qstarlike/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                # -fcx-limited-range skips the Annex-G nan/inf recovery in
                # complex mul/div; zero denominators are guarded explicitly
                extra_compile_args=["-O3", "-fcx-limited-range", "-funroll-loops"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
