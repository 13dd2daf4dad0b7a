"""Select the roof-search kernel implementation at import time.

The compiled extension is used when it was built; setting the environment
variable ``THREETANGLE_BACKEND=python`` forces the pure-Python fallback.
"""

import os

from . import _fallback

if os.environ.get("THREETANGLE_BACKEND", "").lower() == "python":
    kernels = _fallback
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        kernels = _fallback

BACKEND = kernels.NAME
