import os

from setuptools import setup

# The compiled kernel is an optional accelerator: if Cython (or a C
# compiler) is unavailable the package installs anyway and falls back to
# the pure-Python kernel at import time.
ext_modules = []
if not os.environ.get("ROOTLOCI_PURE_BUILD"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/rootloci/_kernel/_ckernel.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
