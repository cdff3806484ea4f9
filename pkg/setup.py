"""Build script for the optional compiled gate kernels.

The package is fully functional without the extension (a numpy fallback is
selected at import time); the Cython module only accelerates the hot
amplitude loops. Set QFORGE_NO_EXT=1 to skip the extension build entirely.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("QFORGE_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "qforge._kernels",
                    ["src/qforge/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("qforge: Cython/numpy unavailable at build time, "
              "installing with pure-python kernels")

setup(ext_modules=ext_modules)
