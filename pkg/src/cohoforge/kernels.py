"""Backend selection for the row-reduction kernels.

The compiled extension ``cohoforge._fastcore`` is used when it was built;
otherwise the numpy implementation in ``cohoforge._purecore`` is used.
Setting ``COHOFORGE_PURE=1`` forces the fallback.
"""

import os

from . import _purecore

try:
    if os.environ.get("COHOFORGE_PURE", "") not in ("", "0"):
        raise ImportError("pure backend forced")
    from . import _fastcore as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _purecore
    BACKEND = "pure"

rref_gf2_packed = _impl.rref_gf2_packed
rref_modp = _impl.rref_modp


def available_backends():
    """Map backend name -> kernel module, for tests and benchmarks."""
    out = {"pure": _purecore}
    try:
        from . import _fastcore

        out["compiled"] = _fastcore
    except ImportError:
        pass
    return out
