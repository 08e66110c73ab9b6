import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy  # noqa: F401

    USE_CYTHON = not os.environ.get("LAZYSORT_NO_EXT")
except ImportError:
    USE_CYTHON = False

extensions = []
if USE_CYTHON:
    extensions = cythonize(
        [Extension("lazysort._kernels", ["src/lazysort/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
