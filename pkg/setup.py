import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "corrint._kernels._profile_cy",
                ["src/corrint/_kernels/_profile_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python install still works: the numpy backend is selected at import.
    extensions = []

setup(ext_modules=extensions)
