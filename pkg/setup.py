import numpy
from setuptools import Extension, setup

# The compiled kernels are optional: if Cython (or a C compiler) is missing,
# the package falls back to the numpy implementation selected at import time.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "beurling._kernels._dirichlet",
                ["src/beurling/_kernels/_dirichlet.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
