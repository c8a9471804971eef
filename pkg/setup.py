"""Build script for the optional compiled extension.

The package works without the extension (a pure Python fallback is selected
at import time), so a missing Cython toolchain degrades the build instead of
failing it.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("rlbwt2lz._speedups", ["src/rlbwt2lz/_speedups.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
