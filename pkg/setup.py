"""Build script: compiles the optional kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), so the build is marked optional and failures are non-fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "nmteleport._kernels",
                ["src/nmteleport/_kernels.pyx"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
