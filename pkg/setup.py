"""Build script: compiles the Cython kernel extension when possible.

The package works without the extension; psitwist._kernels falls back to
the numpy implementation at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "psitwist._kernels_cy",
                ["src/psitwist/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - pure-python install path
    print(f"psitwist: skipping Cython extension ({exc}); using pure-python kernels")

setup(ext_modules=ext_modules)
