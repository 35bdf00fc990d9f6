"""Numerical core with a compiled fast path.

The hot kernels (local diagonal metric evaluation and the diagonal geodesic
right-hand side) exist twice: a Cython extension ``_kernels`` built at
install time and a pure-numpy fallback ``_kernels_py``.  The extension is
preferred when importable; setting the environment variable
``GEOPATHS_PURE_PYTHON`` (to anything non-empty) forces the fallback, which
is how the benchmark and the agreement tests compare the two.

``BACKEND`` reports which implementation is active ("cython" or "python").
"""

import os

from . import _kernels_py

if os.environ.get("GEOPATHS_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

local_diag_metric_batch = _impl.local_diag_metric_batch
diag_geodesic_rhs_batch = _impl.diag_geodesic_rhs_batch

__all__ = [
    "BACKEND",
    "local_diag_metric_batch",
    "diag_geodesic_rhs_batch",
]
