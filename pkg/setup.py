"""Build script: compiles the optional fast kernels extension.

The package works without the extension (a NumPy fallback is selected at
import time), so any failure to build it is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rotifuge._kernels",
                ["src/rotifuge/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    import sys

    print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
