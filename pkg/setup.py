"""Build script for the optional compiled integrator core.

The package is fully functional without the extension: ``su4rabi._backend``
falls back to the pure NumPy integrator when the compiled module is absent.
Set SU4RABI_SKIP_EXT=1 to skip compilation on purpose.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("SU4RABI_SKIP_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "su4rabi._kernels",
                ["src/su4rabi/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
