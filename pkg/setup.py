"""Build script for the optional compiled kernel core.

The package works without the extension (a numpy fallback is selected at
import time), so the build degrades gracefully if Cython or a C compiler
is unavailable.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "zonalkit._ckernels",
                ["src/zonalkit/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
