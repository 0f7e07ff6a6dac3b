"""Build script: compiles the optional fast core if Cython is available.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so the extension is marked optional and any
compilation failure downgrades to the pure-Python build.
"""

import os

from setuptools import Extension, setup

ext_modules = []
_PYX = os.path.join("src", "realzeros", "_core.pyx")
if os.path.exists(_PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "realzeros._core",
                    [_PYX],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
