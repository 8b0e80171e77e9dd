"""Build script: compiles the optional fast kernel when Cython is available.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so a missing compiler or missing
Cython must never fail the install.

To force-build the extension in place:

    python setup.py build_ext --inplace
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("HOSIM_NO_EXT", "") not in ("1", "true", "yes") and os.path.exists(
    "src/hosim/_kernel.pyx"
):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "hosim._kernel",
                    ["src/hosim/_kernel.pyx"],
                    # -ffp-contract=off keeps float results bit-identical to
                    # the pure-Python kernel (no FMA contraction).
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
