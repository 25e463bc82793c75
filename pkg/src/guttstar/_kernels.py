"""Select the normal-ordering kernel at import time.

The compiled extension is used when it was built; set ``GUTTSTAR_PURE=1`` to
force the pure-Python fallback.  Both produce identical results.
"""

import os

if os.environ.get("GUTTSTAR_PURE", "") not in ("", "0"):
    from ._kernels_py import IMPLEMENTATION, OrderingEngine
else:
    try:
        from ._ckernels import IMPLEMENTATION, OrderingEngine
    except ImportError:  # extension not built
        from ._kernels_py import IMPLEMENTATION, OrderingEngine

__all__ = ["IMPLEMENTATION", "OrderingEngine"]
