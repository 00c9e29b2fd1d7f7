"""Backend selection for the hot loops.

The Cython extension is used when it was built; otherwise, or when
``HEARTHLEDGER_PURE`` is set to a non-empty value other than ``0``, the
numpy fallback is loaded. Both expose the same four functions.
"""

import os

from . import _kernels_py

_force_pure = os.environ.get("HEARTHLEDGER_PURE", "") not in ("", "0")

if _force_pure:
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
weighted_sum = _impl.weighted_sum
power_sum = _impl.power_sum
log_sum = _impl.log_sum
gini_sorted = _impl.gini_sorted
