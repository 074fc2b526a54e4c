"""Build script: compiles the Monte Carlo hot-loop extension when Cython is
available, otherwise installs the pure-Python package (the numpy fallback
backend is selected automatically at import time)."""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = None
else:
    ext_modules = cythonize(
        [
            Extension(
                "hardvirial.montecarlo._kernels_cy",
                ["src/hardvirial/montecarlo/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
