"""Optional compiled kernels.

The package is pure Python; if Cython and a C compiler are present the
convolution kernels are compiled, otherwise the install silently keeps
the interpreted fallback.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "genusforge._kernels._speedups",
                ["src/genusforge/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
