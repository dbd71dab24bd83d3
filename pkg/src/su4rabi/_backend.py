"""Select the integrator core at import time.

The compiled extension is preferred when present; the NumPy fallback keeps
the package fully functional without it. ``SU4RABI_PURE=1`` forces the
fallback (useful for testing and benchmarking the pure path).
"""

from __future__ import annotations

import os

if os.environ.get("SU4RABI_PURE"):
    from . import _kernels_py as kernels

    USING_COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        USING_COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        USING_COMPILED = False

__all__ = ["kernels", "USING_COMPILED"]
