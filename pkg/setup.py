import sys

import numpy as np
from setuptools import Extension, setup


def extension_modules():
    """Cythonize the sweep kernels; fall back to a pure-python install if that fails."""
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("mcdemosaic: Cython unavailable, installing with pure-python kernels",
              file=sys.stderr)
        return []
    ext = Extension(
        "mcdemosaic._kernels._native",
        ["src/mcdemosaic/_kernels/_native.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"})
    except Exception as exc:  # compiled path is an optimization, never a hard requirement
        print(f"mcdemosaic: kernel build failed ({exc}), installing pure-python kernels",
              file=sys.stderr)
        return []


setup(ext_modules=extension_modules())
