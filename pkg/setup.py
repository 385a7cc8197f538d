"""Build script for the optional compiled kernel.

The package is pure Python; the Cython extension only accelerates the
bounded cycle search and GF(2) elimination.  If Cython or a C compiler is
missing the build falls back to the pure implementation in _kernels_py.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("localsep._kernels", ["src/localsep/_kernels.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
