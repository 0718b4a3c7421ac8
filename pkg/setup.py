"""Build script.

The compiled kernel is optional: if Cython or a C compiler is missing the
package installs anyway and falls back to the pure Python kernels.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lcpinfer/_speedups.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"lcpinfer: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
