"""Build script: compiles the modular linear-algebra kernels when Cython is
available.  The package works without the extension (a numpy fallback is
selected at import time), so the extension is marked optional."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "promlex._kernels",
                ["src/promlex/_kernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
