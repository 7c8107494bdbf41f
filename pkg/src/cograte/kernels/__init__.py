"""Backend selection for the rate-curve kernels.

The compiled extension (``cograte.kernels._native``) is used when it
imports; otherwise the numpy fallback takes over. Set COGRATE_BACKEND=py to
force the fallback or COGRATE_BACKEND=c to insist on the extension (raising
if it is unavailable). Both backends implement identical contracts; see
``purepy`` for the reference semantics.
"""

from __future__ import annotations

import os

from . import purepy

_requested = os.environ.get("COGRATE_BACKEND", "").strip().lower()

_impl = None
if _requested not in ("py", "python", "purepy"):
    try:
        from . import _native as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None

if _impl is None:
    if _requested in ("c", "ext", "native", "compiled"):
        raise ImportError(
            "COGRATE_BACKEND requested the compiled kernels but "
            "cograte.kernels._native is not built"
        )
    _impl = purepy

BACKEND = "native" if _impl is not purepy else "python"

siso_power_split_curve = _impl.siso_power_split_curve
siso_total_rate_curve = _impl.siso_total_rate_curve
two_state_log_curve = _impl.two_state_log_curve
waterfill_rate_curve = _impl.waterfill_rate_curve

__all__ = [
    "BACKEND",
    "purepy",
    "siso_power_split_curve",
    "siso_total_rate_curve",
    "two_state_log_curve",
    "waterfill_rate_curve",
]
