"""Build script: compiles the optional bitset kernel extension.

The package works without it (a pure-Python fallback is selected at
import time), so the Cython build is best-effort.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "topstruct._kernels._fast",
                ["src/topstruct/_kernels/_fast.pyx"],
            )
        ],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
