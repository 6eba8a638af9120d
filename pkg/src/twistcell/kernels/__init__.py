"""Hot kernels for diagram composition.

Diagrams on 2n points travel through these functions as normalized
block-id vectors: ``vec[p]`` is the block id of point p, points ordered
as 1..n (top row) then 1'..n' (bottom row), ids numbered by first
occurrence.  The compiled core is used when available; otherwise a
pure-Python implementation with identical semantics is selected.
"""

import os

if os.environ.get("TWISTCELL_FORCE_PY_KERNEL"):  # pragma: no cover
    from . import _pyfallback as _impl

    BACKEND = "python"
else:
    try:  # pragma: no cover - depends on build environment
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:  # pragma: no cover
        from . import _pyfallback as _impl

        BACKEND = "python"

compose = _impl.compose
build_tables = _impl.build_tables
