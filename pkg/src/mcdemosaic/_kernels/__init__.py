"""Sweep kernels for the iterative green refinement.

The Gauss-Seidel sweeps are order-dependent recurrences (each pixel reads
already-updated west/south neighbors), so they cannot be vectorized with
array ops. Two interchangeable backends provide them:

* ``_native`` - Cython extension, the production path
* ``pure``    - plain-python twin with identical update order, used as the
                import-time fallback and as the reference in equivalence tests

Set ``MCDEMOSAIC_PURE=1`` to force the pure backend.
"""

import os

from . import pure

if os.environ.get("MCDEMOSAIC_PURE"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _native as _impl
        BACKEND = "native"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

green_sweeps = _impl.green_sweeps
vector_sweeps = _impl.vector_sweeps
