"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python kernel
backend is selected at import time); the build therefore tolerates a missing
Cython or a failing C toolchain.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "husmine._kernels._ckern",
                ["src/husmine/_kernels/_ckern.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
