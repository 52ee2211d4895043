"""Build hook for the optional compiled reduction kernel.

The extension is best-effort: without Cython or a C compiler the
install still succeeds and the package falls back to the pure-Python
engine at import time. Set PCFKIT_NO_EXT=1 to skip the build outright.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PCFKIT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("pcfkit._kernel", ["src/pcfkit/_kernel.pyx"])],
            language_level=3,
        )
        for ext in ext_modules:
            # build_ext warns instead of failing when no compiler exists
            ext.optional = True

setup(ext_modules=ext_modules)
