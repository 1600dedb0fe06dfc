"""Build script. The compiled kernel is optional: if Cython or a C compiler
is unavailable the install proceeds and the package falls back to the pure
Python kernels at import time."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "etaparity._core",
                ["src/etaparity/_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
