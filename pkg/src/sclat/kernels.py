"""Select the compiled sweep kernel when it is built, else the pure-Python one.

Set ``SCLAT_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("SCLAT_PURE_PYTHON"):
    from ._kernels_py import BACKEND, profile_pair_codes
else:
    try:
        from ._kernels import BACKEND, profile_pair_codes
    except ImportError:  # extension not built
        from ._kernels_py import BACKEND, profile_pair_codes

__all__ = ["BACKEND", "profile_pair_codes"]
