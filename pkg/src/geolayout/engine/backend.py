"""Step-kernel backend selection.

The compiled Cython kernel is used when importable; otherwise (or when
``GEOLAYOUT_BACKEND=python`` is set) the NumPy fallback takes over. Both
expose the same ``step_kernel`` signature.
"""

from __future__ import annotations

import os

from . import _kernel_py

_FORCED = os.environ.get("GEOLAYOUT_BACKEND", "").strip().lower()

if _FORCED in ("", "compiled"):
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _FORCED == "compiled":
            raise
        _impl = _kernel_py
else:
    _impl = _kernel_py

step_kernel = _impl.step_kernel


def backend_name() -> str:
    """Either ``"compiled"`` or ``"python"``."""
    return _impl.BACKEND_NAME


def available_backends() -> dict[str, object]:
    """Map of backend name to its step_kernel, for benchmarking both."""
    backends = {_kernel_py.BACKEND_NAME: _kernel_py.step_kernel}
    try:
        from . import _speedups  # type: ignore[attr-defined]
        backends[_speedups.BACKEND_NAME] = _speedups.step_kernel
    except ImportError:
        pass
    return backends
