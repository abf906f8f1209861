"""Pick the compiled kernels when importable, else the pure-Python ones.

Set ``EFFHAM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

if os.environ.get("EFFHAM_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "compiled"
    except ImportError:  # extension not built
        kernels = _fallback
        BACKEND = "python"

AVAILABLE = {"python": _fallback}
try:
    from . import _kernels as _compiled
    AVAILABLE["compiled"] = _compiled
except ImportError:
    pass
