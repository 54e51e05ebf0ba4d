"""Build the optional compiled echelon kernel; the package runs without it."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ARTIFACT_PURE_BUILD", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("artifact._ext.echelon_c", ["src/artifact/_ext/echelon_c.pyx"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
