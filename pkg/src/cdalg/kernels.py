"""Integer elimination kernel, compiled when available.

Set ``CDALG_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("CDALG_PURE_PYTHON"):
    from ._kernels_py import echelon, rank

    BACKEND = "python"
else:
    try:
        from ._kernels import echelon, rank

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import echelon, rank

        BACKEND = "python"

__all__ = ["echelon", "rank", "BACKEND"]
