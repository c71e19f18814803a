import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CROSSFREE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("crossfree._cliquec", ["src/crossfree/_cliquec.pyx"])],
            language_level=3,
        )
    except ImportError:
        # Pure-Python fallback is selected at import time, so a missing
        # compiler toolchain is not fatal.
        ext_modules = []

setup(ext_modules=ext_modules)
