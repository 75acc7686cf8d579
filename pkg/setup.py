"""Build script for the optional compiled accumulation kernels.

The package is fully functional without the extension (a NumPy fallback
is selected at import time); the extension just makes single-threshold
evaluation a strict one-pass C loop.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "cwsa_eval._kernels_c",
                ["src/cwsa_eval/_kernels_c.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
