"""Build script for the optional compiled diagram-composition kernel.

The package works without the extension (a pure-Python fallback is selected
at import time); set TWISTCELL_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("TWISTCELL_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/twistcell/kernels/_core.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
