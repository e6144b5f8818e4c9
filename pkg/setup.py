"""Build the optional GMP fixed-point Horner kernel.

The package works without the extension (a pure gmpy2/mpc fallback is
selected at import time); the kernel makes high-degree solves several
times faster.
"""

import os

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import gmpy2

    gmpy2_dir = os.path.dirname(gmpy2.__file__)
    ext_modules = cythonize(
        [
            Extension(
                "attractorlab._horner_gmp",
                sources=["src/attractorlab/_horner_gmp.pyx"],
                include_dirs=[gmpy2_dir],
                libraries=["gmp"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
        include_path=[gmpy2_dir],
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
