"""Build hook: compile the optional fast kernels, fall back to pure Python.

The package is fully functional without the extension; ``satskr.kernels``
picks whichever backend imports.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("satskr._ckernels", ["src/satskr/_ckernels.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"satskr: skipping compiled kernels ({exc}); pure-Python fallback will be used")
    ext_modules = []

setup(ext_modules=ext_modules)
